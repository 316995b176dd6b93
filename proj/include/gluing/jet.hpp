#pragma once

/// Truncated Taylor jets in one variable.
///
/// A Jet of order K at base point t0 stores c_0..c_K with
/// f(t) ~ sum_k c_k (t - t0)^k, so the k-th derivative is k! * c_k.
/// Every operation truncates at the smaller order of its operands and never
/// reads past it.

#include "gluing/vec3.hpp"

#include <span>
#include <vector>

namespace gluing {

inline constexpr int kDefaultJetOrder = 6;
inline constexpr double kDeflationTolerance = 1e-12;

class Jet
{
  public:
    Jet() : Jet(0.0, 0) {}
    /// Zero jet.
    Jet(double base_point, int order);
    Jet(double base_point, std::vector<double> coeffs);

    static Jet constant(double base_point, int order, double value);
    /// The identity function t -> t expanded at `base_point`.
    static Jet variable(double base_point, int order);

    double base_point() const noexcept { return base_; }
    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    double operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    double& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }

    double value() const noexcept { return coeffs_.front(); }
    /// k! * c_k
    double derivative(int k) const;

    /// d/dt, one order lower. Differentiating an order-0 jet gives an order-0 zero.
    Jet differentiate() const;
    Jet truncated(int order) const;

    Jet& operator+=(const Jet& b);
    Jet& operator-=(const Jet& b);
    Jet& operator*=(const Jet& b);
    Jet& operator/=(const Jet& b);
    Jet& operator+=(double s);
    Jet& operator-=(double s);
    Jet& operator*=(double s);
    Jet& operator/=(double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a /= s; }
    friend Jet operator/(double s, const Jet& a) { return Jet::constant(a.base_, a.order(), s) / a; }
    friend Jet operator-(Jet a);

  private:
    double base_;
    std::vector<double> coeffs_;
};

enum class JetFn { Sin, Cos, Sqrt };

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sqrt(const Jet& a);
/// a^n for n >= 0.
Jet pow(const Jet& a, int n);
Jet apply(JetFn fn, const Jet& a);

/// Continuous angle whose (sin, cos) are proportional to (s, c).
/// The derivative is (s'c - c's)/(s^2 + c^2), integrated and anchored at
/// atan2(s_0, c_0); for a unit pair this is s'c - c's.
Jet atan2_pair(const Jet& s, const Jet& c);

struct VecJet
{
    Jet x, y, z;

    VecJet() = default;
    VecJet(Jet x_, Jet y_, Jet z_);
    static VecJet constant(double base_point, int order, const Vec3& v);

    double base_point() const noexcept { return x.base_point(); }
    int order() const noexcept { return x.order(); }
    Vec3 value() const { return {x.value(), y.value(), z.value()}; }
    Vec3 coeff(int k) const { return {x[k], y[k], z[k]}; }
    Vec3 derivative(int k) const { return {x.derivative(k), y.derivative(k), z.derivative(k)}; }

    VecJet differentiate() const;
    VecJet truncated(int order) const;

    friend VecJet operator+(const VecJet& a, const VecJet& b);
    friend VecJet operator-(const VecJet& a, const VecJet& b);
    friend VecJet operator-(const VecJet& a);
    friend VecJet operator*(const Jet& s, const VecJet& a);
    friend VecJet operator*(const VecJet& a, const Jet& s) { return s * a; }
    friend VecJet operator*(double s, const VecJet& a);
    friend VecJet operator/(const VecJet& a, const Jet& s);
};

Jet dot(const VecJet& a, const VecJet& b);
VecJet cross(const VecJet& a, const VecJet& b);
/// a / sqrt(a.a); DomainError when the value of a is zero.
VecJet normalize(const VecJet& a);

/// Divide by (t - t0)^m at t0 itself: drop the first m coefficient vectors.
/// NotDeflatable if any of them exceeds `tol` in max-norm.
VecJet deflate(const VecJet& v, int multiplicity, double tol = kDeflationTolerance);

/// Divide a jet at base t by (t - root)^m, choosing the numerically stable
/// recurrence direction. Result order is v.order() - m. When |t - root| is
/// small the top coefficients absorb the truncation error, so callers should
/// pass a few spare orders and truncate. At t == root this is `deflate`.
VecJet divide_by_root_power(const VecJet& v, double root, int multiplicity, double tol = kDeflationTolerance);

} // namespace gluing

#include "gluing/jet.hpp"

#include "gluing/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gluing {

namespace {

void check_base(const Jet& a, const Jet& b)
{
    if (a.base_point() != b.base_point()) throw std::invalid_argument("jet operands expanded at different base points");
}

double factorial(int k)
{
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

Jet::Jet(double base_point, int order) : base_(base_point), coeffs_(static_cast<std::size_t>(std::max(order, 0)) + 1, 0.0)
{
    if (order < 0) throw std::invalid_argument("jet order must be non-negative");
}

Jet::Jet(double base_point, std::vector<double> coeffs) : base_(base_point), coeffs_(std::move(coeffs))
{
    if (coeffs_.empty()) throw std::invalid_argument("jet needs at least one coefficient");
}

Jet Jet::constant(double base_point, int order, double value)
{
    Jet j(base_point, order);
    j.coeffs_[0] = value;
    return j;
}

Jet Jet::variable(double base_point, int order)
{
    Jet j(base_point, order);
    j.coeffs_[0] = base_point;
    if (order >= 1) j.coeffs_[1] = 1.0;
    return j;
}

double Jet::derivative(int k) const { return factorial(k) * (*this)[k]; }

Jet Jet::differentiate() const
{
    const int k_max = order();
    if (k_max == 0) return Jet(base_, 0);
    Jet d(base_, k_max - 1);
    for (int k = 0; k < k_max; ++k) d.coeffs_[static_cast<std::size_t>(k)] = (k + 1) * coeffs_[static_cast<std::size_t>(k) + 1];
    return d;
}

Jet Jet::truncated(int order) const
{
    if (order > this->order()) throw std::invalid_argument("cannot raise jet order by truncation");
    return Jet(base_, std::vector<double>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Jet& Jet::operator+=(const Jet& b)
{
    check_base(*this, b);
    coeffs_.resize(std::min(coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += b.coeffs_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& b)
{
    check_base(*this, b);
    coeffs_.resize(std::min(coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= b.coeffs_[k];
    return *this;
}

Jet& Jet::operator*=(const Jet& b) { return *this = *this * b; }
Jet& Jet::operator/=(const Jet& b) { return *this = *this / b; }

Jet& Jet::operator+=(double s)
{
    coeffs_[0] += s;
    return *this;
}

Jet& Jet::operator-=(double s)
{
    coeffs_[0] -= s;
    return *this;
}

Jet& Jet::operator*=(double s)
{
    for (auto& c : coeffs_) c *= s;
    return *this;
}

Jet& Jet::operator/=(double s)
{
    for (auto& c : coeffs_) c /= s;
    return *this;
}

Jet operator-(Jet a)
{
    for (auto& c : a.coeffs_) c = -c;
    return a;
}

Jet operator*(const Jet& a, const Jet& b)
{
    check_base(a, b);
    const int n = std::min(a.order(), b.order());
    Jet r(a.base_, n);
    for (int k = 0; k <= n; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
        r[k] = acc;
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b)
{
    check_base(a, b);
    if (b[0] == 0.0) throw DivisionByZeroJet("jet divisor has zero constant term");
    const int n = std::min(a.order(), b.order());
    Jet q(a.base_, n);
    for (int k = 0; k <= n; ++k) {
        double acc = a[k];
        for (int j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
        q[k] = acc / b[0];
    }
    return q;
}

namespace {

// sin and cos together: k s_k = sum_j j a_j c_{k-j}, k c_k = -sum_j j a_j s_{k-j}
std::pair<Jet, Jet> sin_cos(const Jet& a)
{
    const int n = a.order();
    Jet s(a.base_point(), n);
    Jet c(a.base_point(), n);
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (int k = 1; k <= n; ++k) {
        double ss = 0.0;
        double cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * a[j] * c[k - j];
            cc -= j * a[j] * s[k - j];
        }
        s[k] = ss / k;
        c[k] = cc / k;
    }
    return {s, c};
}

} // namespace

Jet sin(const Jet& a) { return sin_cos(a).first; }
Jet cos(const Jet& a) { return sin_cos(a).second; }

Jet sqrt(const Jet& a)
{
    if (!(a[0] > 0.0)) throw DomainError("sqrt of a jet with nonpositive constant term " + std::to_string(a[0]));
    const int n = a.order();
    Jet b(a.base_point(), n);
    b[0] = std::sqrt(a[0]);
    for (int k = 1; k <= n; ++k) {
        double acc = a[k];
        for (int j = 1; j < k; ++j) acc -= b[j] * b[k - j];
        b[k] = acc / (2.0 * b[0]);
    }
    return b;
}

Jet pow(const Jet& a, int n)
{
    if (n < 0) throw std::invalid_argument("jet pow exponent must be non-negative");
    Jet result = Jet::constant(a.base_point(), a.order(), 1.0);
    Jet base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

Jet apply(JetFn fn, const Jet& a)
{
    switch (fn) {
    case JetFn::Sin: return sin(a);
    case JetFn::Cos: return cos(a);
    case JetFn::Sqrt: return sqrt(a);
    }
    throw std::logic_error("unknown jet function");
}

Jet atan2_pair(const Jet& s, const Jet& c)
{
    check_base(s, c);
    const Jet r2 = s * s + c * c;
    if (r2[0] == 0.0) throw DomainError("atan2 of a jet pair whose value is (0, 0)");
    const Jet rate = (s.differentiate() * c - c.differentiate() * s) / r2.truncated(std::max(r2.order() - 1, 0));
    const int n = std::min(s.order(), c.order());
    Jet theta(s.base_point(), n);
    theta[0] = std::atan2(s[0], c[0]);
    for (int k = 1; k <= n; ++k) theta[k] = rate[k - 1] / k;
    return theta;
}

VecJet::VecJet(Jet x_, Jet y_, Jet z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_))
{
    if (x.base_point() != y.base_point() || x.base_point() != z.base_point())
        throw std::invalid_argument("vector jet components expanded at different base points");
    const int n = std::min({x.order(), y.order(), z.order()});
    if (x.order() != n) x = x.truncated(n);
    if (y.order() != n) y = y.truncated(n);
    if (z.order() != n) z = z.truncated(n);
}

VecJet VecJet::constant(double base_point, int order, const Vec3& v)
{
    return {Jet::constant(base_point, order, v.x), Jet::constant(base_point, order, v.y),
            Jet::constant(base_point, order, v.z)};
}

VecJet VecJet::differentiate() const { return {x.differentiate(), y.differentiate(), z.differentiate()}; }

VecJet VecJet::truncated(int order) const { return {x.truncated(order), y.truncated(order), z.truncated(order)}; }

VecJet operator+(const VecJet& a, const VecJet& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
VecJet operator-(const VecJet& a, const VecJet& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
VecJet operator-(const VecJet& a) { return {-a.x, -a.y, -a.z}; }
VecJet operator*(const Jet& s, const VecJet& a) { return {s * a.x, s * a.y, s * a.z}; }
VecJet operator*(double s, const VecJet& a) { return {s * a.x, s * a.y, s * a.z}; }
VecJet operator/(const VecJet& a, const Jet& s) { return {a.x / s, a.y / s, a.z / s}; }

Jet dot(const VecJet& a, const VecJet& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

VecJet cross(const VecJet& a, const VecJet& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

VecJet normalize(const VecJet& a)
{
    const Jet n2 = dot(a, a);
    if (!(n2[0] > 0.0)) throw DomainError("cannot normalize a vector jet whose value is zero");
    return a / sqrt(n2);
}

VecJet deflate(const VecJet& v, int multiplicity, double tol)
{
    if (multiplicity < 0) throw std::invalid_argument("deflation multiplicity must be non-negative");
    if (multiplicity == 0) return v;
    if (multiplicity > v.order()) throw NotDeflatable("jet order too low to deflate by " + std::to_string(multiplicity));
    for (int k = 0; k < multiplicity; ++k) {
        const double r = max_abs(v.coeff(k));
        if (r > tol)
            throw NotDeflatable("coefficient " + std::to_string(k) + " is " + std::to_string(r) +
                                ", not zero; declared multiplicity " + std::to_string(multiplicity) + " is wrong");
    }
    auto shift = [&](const Jet& c) {
        auto src = c.coeffs();
        return Jet(c.base_point(), std::vector<double>(src.begin() + multiplicity, src.end()));
    };
    return {shift(v.x), shift(v.y), shift(v.z)};
}

namespace {

// One division of a scalar jet by (delta + s), delta = base - root.
std::vector<double> divide_linear(std::span<const double> a, double delta)
{
    const std::size_t n = a.size();
    std::vector<double> q(n - 1, 0.0);
    if (std::fabs(delta) < 0.5) {
        // backward: q_{k-1} = a_k - delta q_k, tail q_{n-1} taken as 0
        double next = 0.0;
        for (std::size_t k = n - 1; k >= 1; --k) {
            next = a[k] - delta * next;
            q[k - 1] = next;
        }
    } else {
        // forward: q_0 = a_0/delta, q_k = (a_k - q_{k-1})/delta
        double prev = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            prev = (a[k] - prev) / delta;
            q[k] = prev;
        }
    }
    return q;
}

} // namespace

VecJet divide_by_root_power(const VecJet& v, double root, int multiplicity, double tol)
{
    const double delta = v.base_point() - root;
    if (delta == 0.0) return deflate(v, multiplicity, tol);
    if (multiplicity > v.order()) throw NotDeflatable("jet order too low to divide by multiplicity " + std::to_string(multiplicity));
    std::vector<double> cx(v.x.coeffs().begin(), v.x.coeffs().end());
    std::vector<double> cy(v.y.coeffs().begin(), v.y.coeffs().end());
    std::vector<double> cz(v.z.coeffs().begin(), v.z.coeffs().end());
    for (int i = 0; i < multiplicity; ++i) {
        cx = divide_linear(cx, delta);
        cy = divide_linear(cy, delta);
        cz = divide_linear(cz, delta);
    }
    const double t = v.base_point();
    return {Jet(t, std::move(cx)), Jet(t, std::move(cy)), Jet(t, std::move(cz))};
}

} // namespace gluing

#pragma once

// Developable surfaces S(t, a) = gamma(t) + a delta(t) enveloping the planes
// normal to nu (Nu kind) or to b (B kind) along a framed curve.

#include "gluing/frames.hpp"

#include <utility>

namespace gluing {

enum class RulingKind { Nu, B };

const char* to_string(RulingKind kind);

inline constexpr double kZeroTolerance = 1e-9;

/// Jets of every quantity of the surface at one parameter value.
/// lambda(t, a) = A(t) + a B(t); the null field is d/dt + C d/da.
struct DevelopableLocal
{
    FrameJets frame;
    FrameInvariants kappa;
    Jet pair_norm;   // sqrt(k3^2 + k1^2) or sqrt(k3^2 + k2^2)
    VecJet delta;
    VecJet w;        // delta' = beta w
    Jet beta, rho;
    Jet lambda0, lambda1, null_a;
    VecJet normal;

    /// Scale for zero decisions on beta: 1 + max |kappa|, |kappa'|.
    double beta_scale() const;
    /// Scale for zero decisions on rho: adds |l|, |l'|, |beta|, |beta'|.
    double rho_scale() const;
};

struct SurfaceSample
{
    double t = 0.0;
    double a = 0.0;
    Vec3 point;
    Vec3 normal;
    double lambda = 0.0;
};

struct StrictionPoint
{
    double s = 0.0;
    Vec3 point;
};

class DevelopableSurface
{
  public:
    /// AssumptionViolated when the defining kappa pair vanishes at one of
    /// `check_samples` uniform samples. With `check_samples == 0` the pair is
    /// only checked lazily by `local`.
    static DevelopableSurface build(FramedCurve fc, RulingKind kind, int check_samples = 201);

    RulingKind kind() const noexcept { return kind_; }
    const FramedCurve& curve() const noexcept { return fc_; }
    const Interval& interval() const noexcept { return fc_.interval(); }

    /// beta has order `order - 1`, rho order `order - 2`.
    DevelopableLocal local(double t, int order = kDefaultJetOrder) const;

    SurfaceSample evaluate(double t, double a) const;
    Vec3 point(double t, double a) const;
    Vec3 ruling(double t) const;

    /// CylindricalAt when beta(t) vanishes.
    StrictionPoint striction(double t) const;

    /// Height h = v.(X - gamma) and its t-derivative, v the defining normal.
    std::pair<double, double> envelope_residual(double t, const Vec3& x) const;

    /// SingularPoint when lambda(t, a) vanishes.
    double gaussian_curvature(double t, double a) const;

  private:
    DevelopableSurface(FramedCurve fc, RulingKind kind) : fc_(std::move(fc)), kind_(kind) {}

    FramedCurve fc_;
    RulingKind kind_;
};

struct SurfaceResiduals
{
    double unit = 0.0;         // |delta| - 1
    double derivative = 0.0;   // delta' - beta w
    double orthogonal = 0.0;   // delta against the defining normal
};

SurfaceResiduals surface_residuals(const DevelopableSurface& s, double t);

} // namespace gluing

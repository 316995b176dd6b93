#pragma once

// Framed curves {e, nu, b} along a curve, with gamma' = l e and b = e x nu.
//
//   e'  =          k1 nu + k2 b
//   nu' = -k1 e          + k3 b
//   b'  = -k2 e  - k3 nu

#include "gluing/curvelang.hpp"
#include "gluing/jet.hpp"

#include <memory>
#include <string>
#include <vector>

namespace gluing {

struct Interval
{
    double lo = 0.0;
    double hi = 1.0;

    bool contains(double t) const noexcept { return lo <= t && t <= hi; }
    /// n uniform samples including both ends.
    std::vector<double> samples(int n) const;
};

/// A parameter where gamma' vanishes to order `multiplicity`.
struct SingularParam
{
    double t0 = 0.0;
    int multiplicity = 1;
};

struct FrameJets
{
    VecJet gamma, e, nu, b;
    Jet l;
};

class FrameSource
{
  public:
    virtual ~FrameSource() = default;
    /// All jets at `t` to at least `order`.
    virtual FrameJets jets(double t, int order) const = 0;
};

class FramedCurve
{
  public:
    FramedCurve(std::shared_ptr<const FrameSource> source, Interval interval, std::vector<SingularParam> singular);

    FrameJets jets(double t, int order) const;
    /// Order-0 evaluation.
    FrameJets at(double t) const { return jets(t, 0); }

    const Interval& interval() const noexcept { return interval_; }
    const std::vector<SingularParam>& singular_params() const noexcept { return singular_; }
    const std::shared_ptr<const FrameSource>& source() const noexcept { return source_; }

  private:
    std::shared_ptr<const FrameSource> source_;
    Interval interval_;
    std::vector<SingularParam> singular_;
};

struct FrameInvariants
{
    Jet kappa1, kappa2, kappa3, l;
};

struct GeodesicInvariants
{
    Jet kappa_n, kappa_g, tau_g;
};

inline constexpr double kExplicitFrameTolerance = 1e-8;
inline constexpr int kFramePreSamples = 64;

/// Frame of a surface along its v = 0 curve. `singular` lists zeros of
/// gamma'; `normal_singular` lists zeros of f_u x f_v along the curve
/// (defaults to `singular` when empty).
FramedCurve frame_from_surface(const ParametricMap& f, int orientation, Interval interval,
                               std::vector<SingularParam> singular = {},
                               std::vector<SingularParam> normal_singular = {});

/// Frame given by explicit curve expressions. FrameInvalid on the first
/// pre-sample that breaks orthonormality or gamma' = l e.
FramedCurve frame_explicit(const ParametricMap& gamma, const ParametricMap& e, const ParametricMap& nu,
                           const Expr& l, Interval interval, std::vector<SingularParam> singular = {});

/// The frame turned by `angle(u)` about e: nu -> cos nu + sin b, b -> cos b - sin nu.
FramedCurve rotate_frame(const FramedCurve& fc, const Expr& angle);

/// kappa jets of order `order`, read off from frame jets one order higher.
FrameInvariants invariants(const FramedCurve& fc, double t, int order = kDefaultJetOrder);

/// Normal curvature, geodesic curvature and geodesic torsion of gamma
/// against nu. SingularCurvePoint where l vanishes.
GeodesicInvariants geodesic_invariants(const FramedCurve& fc, double t, int order = 2);

struct FrameResiduals
{
    double orthonormality = 0.0;   // |e|, |nu| against 1 and e.nu
    double tangent = 0.0;          // gamma' - l e
    double frenet = 0.0;           // frame derivatives against the connection matrix
    double geodesic = 0.0;         // k1 - l k_n, k2 + |l| k_g, k3 - l t_g; NaN where l = 0
};

FrameResiduals frame_residuals(const FramedCurve& fc, double t);

} // namespace gluing

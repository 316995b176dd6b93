#pragma once

#include "gluing/developables.hpp"

#include <optional>
#include <string>

namespace gluing {

enum class Shape { Cylinder, Cone, Generic };
enum class PointLabel { CuspidalEdge, Swallowtail, Degenerate, Unresolved };

const char* to_string(Shape s);
const char* to_string(PointLabel p);

struct SurfaceClass
{
    Shape shape = Shape::Generic;
    double beta_max = 0.0;
    double rho_max = 0.0;
    double beta_tol = 0.0;
    double rho_tol = 0.0;
    /// Striction image at mid-interval, reported for cones.
    std::optional<Vec3> apex;
};

struct PointDiagnostics
{
    double rho = 0.0;
    double rho_prime = 0.0;
    double eta_lambda = 0.0;           // from lambda and the null field
    double eta_lambda_formula = 0.0;   // -+ rho / (beta N), NaN when beta = 0
    double eta_eta_lambda = 0.0;
    int rank = 1;                      // rank of dS at the point
};

struct SingularPointLabel
{
    double t = 0.0;
    double a = 0.0;
    PointLabel label = PointLabel::Unresolved;
    PointDiagnostics diagnostics;
    std::string reason;
};

struct FrontCheck
{
    bool front = false;
    bool hypothesis_met = false;
};

SurfaceClass classify_surface(const DevelopableSurface& s, int samples = 201, double tol = kZeroTolerance);

/// Rank-2 test of (S, normal) at five points along the ruling through t.
FrontCheck front_check(const DevelopableSurface& s, double t);

/// Label of the singular point (t, s(t)). AssumptionViolated when beta(t)
/// vanishes or the defining kappa pair does.
SingularPointLabel classify_singularity(const DevelopableSurface& s, double t, double tol = kZeroTolerance);

/// Label of (t0, 0) where l(t0) = 0, by the l = 0 conditions.
/// PreconditionFailed when l(t0) does not vanish.
SingularPointLabel classify_singularity_l0(const DevelopableSurface& s, double t0, double tol = kZeroTolerance);

} // namespace gluing

#pragma once

// Two surfaces glued along a shared curve: frame 1 and frame 2 share gamma and
// e, and nu2 is nu1 turned about e by the signed angle theta.

#include "gluing/classify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gluing {

inline constexpr double kGlueCurveTolerance = 1e-10;

struct GlueSurface
{
    std::string name;   // S_nu1, S_b1, S_nu2, S_b2
    int frame = 1;
    RulingKind kind = RulingKind::Nu;
    std::optional<DevelopableSurface> surface;
    std::string failure;
};

class GlueScene
{
  public:
    GlueScene(FramedCurve fc1, FramedCurve fc2, int samples);

    const FramedCurve& frame(int i) const { return i == 1 ? fc1_ : fc2_; }
    const Interval& interval() const noexcept { return fc1_.interval(); }
    int samples() const noexcept { return static_cast<int>(ts_.size()); }

    /// Signed angle from nu1 to nu2 about e, continuous on the sample grid.
    Jet theta(double t, int order) const;

    const std::vector<GlueSurface>& surfaces() const noexcept { return surfaces_; }
    const GlueSurface& surface(const std::string& name) const;

  private:
    FramedCurve fc1_, fc2_;
    std::vector<double> ts_;
    std::vector<double> lifted_;
    std::vector<GlueSurface> surfaces_;
};

/// GluingMismatch when gamma or e disagree at a sample.
GlueScene make_glue(FramedCurve fc1, FramedCurve fc2, int samples = 201);

struct RotationResiduals
{
    double kappa1 = 0.0;   // k21 - (cos k11 + sin k12)
    double kappa2 = 0.0;   // k22 - (-sin k11 + cos k12)
    double kappa3 = 0.0;   // k23 - (k13 + theta')
    double rodrigues_nu = 0.0;
    double rodrigues_b = 0.0;

    double max() const;
};

RotationResiduals rotation_identities(const GlueScene& g, double t);

/// beta and rho of S_nu2 written through frame 1 and theta, against the
/// values from frame 2's own invariants.
struct ExpandedForms
{
    double beta_expanded = 0.0;
    double beta_direct = 0.0;
    double rho_expanded = 0.0;
    double rho_direct = 0.0;

    double residual() const;
};

ExpandedForms expanded_nu2(const GlueScene& g, double t);

/// Terms of the S_nu2 conditions at l = 0 written through frame 1:
/// k21 = k11 cos + k12 sin, then l' k21 and k21 l''.
struct FrameOneTerms
{
    double kappa21 = 0.0;
    double cusp_term = 0.0;
    double swallowtail_term = 0.0;
};

FrameOneTerms nu2_terms(const GlueScene& g, double t);

/// S_nu of frame 1 turned by pi/2 against S_b1: max ruling difference.
/// Zero when both are undefined; infinity when only one is.
double rotated_ruling_residual(const GlueScene& g, double t);

struct SurfaceGlueLabel
{
    std::string name;
    bool built = false;
    std::string failure;
    SurfaceClass cls;
    bool cylindrical = false;
    bool conical = false;
};

struct PointGlueLabel
{
    std::string surface;
    std::string source;   // "l = 0" or "rho sign change"
    SingularPointLabel label;
};

struct GlueLabel
{
    std::vector<SurfaceGlueLabel> surfaces;
    std::vector<PointGlueLabel> points;
    double expanded_residual_max = 0.0;
};

/// Shape of one surface plus its singular-point labels at the curve's l = 0
/// parameters and at sign changes of rho; appended to `out`.
void label_surface(const std::string& name, const DevelopableSurface& s, int samples, double tol, GlueLabel& out);

GlueLabel classify_glue(const GlueScene& g, double tol = kZeroTolerance);

struct SpecialAngleReport
{
    double theta = 0.0;
    int k = 0;              // theta = k pi / 2
    std::string lhs, rhs;   // surfaces compared
    std::string lhs_class, rhs_class;
    bool holds = false;
};

/// NotApplicable unless theta is constant and a multiple of pi/2.
SpecialAngleReport special_angle_equivalences(const GlueScene& g, double tol = kZeroTolerance);

} // namespace gluing

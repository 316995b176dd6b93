#include "gluing/glue.hpp"

#include "gluing/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gluing {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Jet principal_theta(const FramedCurve& fc1, const FramedCurve& fc2, double t, int order)
{
    const FrameJets a = fc1.jets(t, order);
    const FrameJets b = fc2.jets(t, order);
    return atan2_pair(dot(b.nu, a.b), dot(b.nu, a.nu));
}

std::string class_name(const GlueSurface& s, double tol)
{
    if (!s.surface) return "hypothesis_failed";
    return to_string(classify_surface(*s.surface, 201, tol).shape);
}

} // namespace

GlueScene::GlueScene(FramedCurve fc1, FramedCurve fc2, int samples)
    : fc1_(std::move(fc1)), fc2_(std::move(fc2)), ts_(fc1_.interval().samples(samples))
{
    lifted_.reserve(ts_.size());
    for (double t : ts_) {
        double th = principal_theta(fc1_, fc2_, t, 0).value();
        if (!lifted_.empty()) th += kTwoPi * std::round((lifted_.back() - th) / kTwoPi);
        lifted_.push_back(th);
    }
    for (int frame : {1, 2}) {
        for (RulingKind kind : {RulingKind::Nu, RulingKind::B}) {
            GlueSurface gs;
            gs.name = std::string("S_") + to_string(kind) + std::to_string(frame);
            gs.frame = frame;
            gs.kind = kind;
            try {
                gs.surface = DevelopableSurface::build(this->frame(frame), kind, samples);
            } catch (const AssumptionViolated& e) {
                gs.failure = e.what();
            }
            surfaces_.push_back(std::move(gs));
        }
    }
}

Jet GlueScene::theta(double t, int order) const
{
    Jet th = principal_theta(fc1_, fc2_, t, order);
    const auto it = std::lower_bound(ts_.begin(), ts_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - ts_.begin());
    if (i == ts_.size()) --i;
    else if (i > 0 && t - ts_[i - 1] < ts_[i] - t) --i;
    return th + kTwoPi * std::round((lifted_[i] - th.value()) / kTwoPi);
}

const GlueSurface& GlueScene::surface(const std::string& name) const
{
    for (const auto& s : surfaces_)
        if (s.name == name) return s;
    throw std::out_of_range("no surface named " + name);
}

GlueScene make_glue(FramedCurve fc1, FramedCurve fc2, int samples)
{
    double worst_gamma = 0.0, worst_e = 0.0, t_gamma = 0.0, t_e = 0.0;
    for (double t : fc1.interval().samples(samples)) {
        const FrameJets a = fc1.jets(t, 0);
        const FrameJets b = fc2.jets(t, 0);
        const double dg = max_abs(a.gamma.value() - b.gamma.value());
        const double de = max_abs(a.e.value() - b.e.value());
        if (dg > worst_gamma) worst_gamma = dg, t_gamma = t;
        if (de > worst_e) worst_e = de, t_e = t;
    }
    if (worst_gamma > kGlueCurveTolerance) throw GluingMismatch("gamma", worst_gamma, t_gamma);
    if (worst_e > kGlueCurveTolerance) throw GluingMismatch("e", worst_e, t_e);
    return GlueScene(std::move(fc1), std::move(fc2), samples);
}

double RotationResiduals::max() const { return std::max({kappa1, kappa2, kappa3, rodrigues_nu, rodrigues_b}); }

RotationResiduals rotation_identities(const GlueScene& g, double t)
{
    const FrameInvariants k1 = invariants(g.frame(1), t, 0);
    const FrameInvariants k2 = invariants(g.frame(2), t, 0);
    const Jet th = g.theta(t, 1);
    const double c = std::cos(th.value());
    const double s = std::sin(th.value());
    const FrameJets f1 = g.frame(1).jets(t, 0);
    const FrameJets f2 = g.frame(2).jets(t, 0);
    RotationResiduals r;
    r.kappa1 = std::fabs(k2.kappa1.value() - (c * k1.kappa1.value() + s * k1.kappa2.value()));
    r.kappa2 = std::fabs(k2.kappa2.value() - (-s * k1.kappa1.value() + c * k1.kappa2.value()));
    r.kappa3 = std::fabs(k2.kappa3.value() - (k1.kappa3.value() + th.derivative(1)));
    r.rodrigues_nu = max_abs(f2.nu.value() - (c * f1.nu.value() + s * f1.b.value()));
    r.rodrigues_b = max_abs(f2.b.value() - (c * f1.b.value() - s * f1.nu.value()));
    return r;
}

double ExpandedForms::residual() const
{
    return std::max(std::fabs(beta_expanded - beta_direct), std::fabs(rho_expanded - rho_direct));
}

ExpandedForms expanded_nu2(const GlueScene& g, double t)
{
    constexpr int order = 4;
    const FrameInvariants k1 = invariants(g.frame(1), t, order);
    const FrameInvariants k2 = invariants(g.frame(2), t, order);
    const Jet th = g.theta(t, order);
    const Jet c = cos(th);
    const Jet s = sin(th);
    const Jet dth = th.differentiate();
    const Jet& k11 = k1.kappa1;
    const Jet& k12 = k1.kappa2;
    const Jet& k13 = k1.kappa3;
    const Jet p = c * k11 + s * k12;
    const Jet q = -s * k11 + c * k12;
    const Jet tt = k13 + dth;
    const Jet rot = c * k11.differentiate() + s * k12.differentiate();
    const Jet beta = q * p * p + tt * (q * (k13 + 2.0 * dth) + rot) - p * (k13.differentiate() + dth.differentiate());
    const Jet& l = k1.l;
    const Jet rho = l * (beta * q * tt + 2.0 * beta * (dth * q + rot) - beta.differentiate() * p) +
                    l.differentiate() * beta * p;

    const Jet& a1 = k2.kappa1;
    const Jet& a2 = k2.kappa2;
    const Jet& a3 = k2.kappa3;
    const Jet beta2 = a1 * a1 * a2 + a2 * a3 * a3 + a1.differentiate() * a3 - a1 * a3.differentiate();
    const Jet rho2 = k2.l * (beta2 * (a2 * a3 + 2.0 * a1.differentiate()) - beta2.differentiate() * a1) +
                     k2.l.differentiate() * a1 * beta2;
    return {beta.value(), beta2.value(), rho.value(), rho2.value()};
}

FrameOneTerms nu2_terms(const GlueScene& g, double t)
{
    const FrameInvariants k1 = invariants(g.frame(1), t, 2);
    const Jet th = g.theta(t, 0);
    const double p = std::cos(th.value()) * k1.kappa1.value() + std::sin(th.value()) * k1.kappa2.value();
    return {p, k1.l.derivative(1) * p, p * k1.l.derivative(2)};
}

double rotated_ruling_residual(const GlueScene& g, double t)
{
    const GlueSurface& sb1 = g.surface("S_b1");
    const FramedCurve turned = rotate_frame(g.frame(1), literal(std::numbers::pi / 2.0));
    std::optional<Vec3> turned_ruling;
    try {
        turned_ruling = DevelopableSurface::build(turned, RulingKind::Nu, 0).ruling(t);
    } catch (const AssumptionViolated&) {
    }
    std::optional<Vec3> b_ruling;
    if (sb1.surface) b_ruling = sb1.surface->ruling(t);
    if (!turned_ruling && !b_ruling) return 0.0;
    if (!turned_ruling || !b_ruling) return std::numeric_limits<double>::infinity();
    return max_abs(*turned_ruling - *b_ruling);
}

void label_surface(const std::string& name, const DevelopableSurface& s, int samples, double tol, GlueLabel& out)
{
    SurfaceGlueLabel sl;
    sl.name = name;
    sl.built = true;
    sl.cls = classify_surface(s, samples, tol);
    sl.cylindrical = sl.cls.shape == Shape::Cylinder;
    sl.conical = sl.cls.shape == Shape::Cone;
    out.surfaces.push_back(sl);
    if (sl.conical) return;

    const auto& singular = s.curve().singular_params();
    for (const SingularParam& p : singular) {
        if (!s.interval().contains(p.t0)) continue;
        PointGlueLabel pl{name, "l = 0", {}};
        try {
            pl.label = classify_singularity_l0(s, p.t0, tol);
        } catch (const Error& e) {
            pl.label.t = p.t0;
            pl.label.label = PointLabel::Unresolved;
            pl.label.reason = e.what();
        }
        out.points.push_back(pl);
    }
    if (sl.cls.shape != Shape::Generic) return;

    // swallowtails away from l = 0: sign changes of rho where beta keeps its sign
    auto is_declared = [&](double t) {
        for (const SingularParam& p : singular)
            if (std::fabs(p.t0 - t) <= 1e-9) return true;
        return false;
    };
    const std::vector<double> ts = s.interval().samples(samples);
    std::vector<double> beta(ts.size()), rho(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const DevelopableLocal L = s.local(ts[i], 2);
        beta[i] = L.beta.value();
        rho[i] = L.rho.value();
    }
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (!(rho[i] * rho[i + 1] < 0.0) || !(beta[i] * beta[i + 1] > 0.0)) continue;
        double lo = ts[i], hi = ts[i + 1], rlo = rho[i];
        for (int it = 0; it < 100 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double rm = s.local(mid, 2).rho.value();
            if ((rm < 0.0) == (rlo < 0.0)) lo = mid, rlo = rm;
            else hi = mid;
        }
        const double t0 = 0.5 * (lo + hi);
        if (is_declared(t0)) continue;
        out.points.push_back({name, "rho sign change", classify_singularity(s, t0, tol)});
    }
}

GlueLabel classify_glue(const GlueScene& g, double tol)
{
    GlueLabel out;
    for (const GlueSurface& gs : g.surfaces()) {
        if (gs.surface) {
            label_surface(gs.name, *gs.surface, g.samples(), tol, out);
        } else {
            SurfaceGlueLabel sl;
            sl.name = gs.name;
            sl.failure = gs.failure;
            out.surfaces.push_back(sl);
        }
    }
    for (double t : g.interval().samples(g.samples()))
        out.expanded_residual_max = std::max(out.expanded_residual_max, expanded_nu2(g, t).residual());
    return out;
}

SpecialAngleReport special_angle_equivalences(const GlueScene& g, double tol)
{
    const std::vector<double> ts = g.interval().samples(g.samples());
    const double ref = g.theta(ts[ts.size() / 2], 0).value();
    for (double t : ts)
        if (std::fabs(g.theta(t, 0).value() - ref) > tol * (1.0 + std::fabs(ref)))
            throw NotApplicable("theta is not constant on the interval");
    const int k = static_cast<int>(std::lround(ref / (std::numbers::pi / 2.0)));
    if (std::fabs(ref - k * std::numbers::pi / 2.0) > tol * (1.0 + std::fabs(ref)))
        throw NotApplicable("theta is not a multiple of pi/2");

    SpecialAngleReport r;
    r.theta = ref;
    r.k = k;
    r.lhs = "S_nu2";
    r.rhs = (k % 2 == 0) ? "S_nu1" : "S_b1";
    r.lhs_class = class_name(g.surface(r.lhs), tol);
    r.rhs_class = class_name(g.surface(r.rhs), tol);
    r.holds = r.lhs_class == r.rhs_class;
    return r;
}

} // namespace gluing

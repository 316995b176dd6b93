#include "gluing/developables.hpp"

#include "gluing/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gluing {

namespace {

double max_abs_coeffs(const Jet& j, int upto)
{
    double m = 0.0;
    for (int k = 0; k <= std::min(upto, j.order()); ++k) m = std::max(m, std::fabs(j.derivative(k)));
    return m;
}

const char* pair_name(RulingKind kind) { return kind == RulingKind::Nu ? "(kappa1, kappa3) = (0, 0)" : "(kappa2, kappa3) = (0, 0)"; }

void check_pair(RulingKind kind, const FrameInvariants& k, double t)
{
    const double first = kind == RulingKind::Nu ? k.kappa1.value() : k.kappa2.value();
    const double third = k.kappa3.value();
    const double scale = 1.0 + std::max({std::fabs(k.kappa1.value()), std::fabs(k.kappa2.value()), std::fabs(third)});
    if (std::max(std::fabs(first), std::fabs(third)) <= kZeroTolerance * scale) throw AssumptionViolated(t, pair_name(kind));
}

} // namespace

const char* to_string(RulingKind kind) { return kind == RulingKind::Nu ? "nu" : "b"; }

double DevelopableLocal::beta_scale() const
{
    return 1.0 + std::max({max_abs_coeffs(kappa.kappa1, 1), max_abs_coeffs(kappa.kappa2, 1),
                           max_abs_coeffs(kappa.kappa3, 1)});
}

double DevelopableLocal::rho_scale() const
{
    return std::max({beta_scale(), 1.0 + max_abs_coeffs(kappa.l, 1), 1.0 + max_abs_coeffs(beta, 1)});
}

DevelopableSurface DevelopableSurface::build(FramedCurve fc, RulingKind kind, int check_samples)
{
    for (double t : fc.interval().samples(check_samples)) check_pair(kind, invariants(fc, t, 0), t);
    return DevelopableSurface(std::move(fc), kind);
}

DevelopableLocal DevelopableSurface::local(double t, int order) const
{
    order = std::max(order, 2);
    DevelopableLocal L;
    L.frame = fc_.jets(t, order + 1);
    const VecJet de = L.frame.e.differentiate();
    const VecJet dnu = L.frame.nu.differentiate();
    L.kappa = {dot(de, L.frame.nu), dot(de, L.frame.b), dot(dnu, L.frame.b), L.frame.l.truncated(order)};
    check_pair(kind_, L.kappa, t);

    const Jet& k1 = L.kappa.kappa1;
    const Jet& k2 = L.kappa.kappa2;
    const Jet& k3 = L.kappa.kappa3;
    const Jet& l = L.kappa.l;
    const Jet dk1 = k1.differentiate();
    const Jet dk2 = k2.differentiate();
    const Jet dk3 = k3.differentiate();
    const Jet dl = l.differentiate();

    if (kind_ == RulingKind::Nu) {
        L.pair_norm = sqrt(k3 * k3 + k1 * k1);
        const Jet& n = L.pair_norm;
        L.delta = (k3 * L.frame.e + k1 * L.frame.b) / n;
        L.w = (-k1 * L.frame.e + k3 * L.frame.b) / (n * n * n);
        L.beta = k1 * k1 * k2 + k2 * k3 * k3 + dk1 * k3 - k1 * dk3;
        L.rho = l * (L.beta * (k2 * k3 + 2.0 * dk1) - L.beta.differentiate() * k1) + dl * k1 * L.beta;
        L.lambda0 = -l * k1 / n;
        L.lambda1 = L.beta / (n * n);
        L.normal = L.frame.nu;
    } else {
        L.pair_norm = sqrt(k3 * k3 + k2 * k2);
        const Jet& n = L.pair_norm;
        L.delta = (k3 * L.frame.e - k2 * L.frame.nu) / n;
        L.w = (k2 * L.frame.e + k3 * L.frame.nu) / (n * n * n);
        L.beta = k1 * k2 * k2 + k1 * k3 * k3 + k2 * dk3 - dk2 * k3;
        L.rho = l * (L.beta * (k1 * k3 - 2.0 * dk2) + L.beta.differentiate() * k2) - dl * k2 * L.beta;
        L.lambda0 = -l * k2 / n;
        L.lambda1 = -L.beta / (n * n);
        L.normal = L.frame.b;
    }
    L.null_a = -l * k3 / L.pair_norm;
    return L;
}

Vec3 DevelopableSurface::ruling(double t) const
{
    const FrameInvariants k = invariants(fc_, t, 0);
    check_pair(kind_, k, t);
    const FrameJets fj = fc_.jets(t, 0);
    const double k1 = k.kappa1.value();
    const double k2 = k.kappa2.value();
    const double k3 = k.kappa3.value();
    if (kind_ == RulingKind::Nu) return (k3 * fj.e.value() + k1 * fj.b.value()) / std::hypot(k3, k1);
    return (k3 * fj.e.value() - k2 * fj.nu.value()) / std::hypot(k3, k2);
}

Vec3 DevelopableSurface::point(double t, double a) const { return fc_.jets(t, 0).gamma.value() + a * ruling(t); }

SurfaceSample DevelopableSurface::evaluate(double t, double a) const
{
    const DevelopableLocal L = local(t, 2);
    return {t, a, L.frame.gamma.value() + a * L.delta.value(), L.normal.value(),
            L.lambda0.value() + a * L.lambda1.value()};
}

StrictionPoint DevelopableSurface::striction(double t) const
{
    const DevelopableLocal L = local(t, 2);
    if (std::fabs(L.beta.value()) <= kZeroTolerance * L.beta_scale()) throw CylindricalAt(t);
    const double s = -L.lambda0.value() / L.lambda1.value();
    return {s, L.frame.gamma.value() + s * L.delta.value()};
}

std::pair<double, double> DevelopableSurface::envelope_residual(double t, const Vec3& x) const
{
    const FrameJets fj = fc_.jets(t, 1);
    const VecJet& v = kind_ == RulingKind::Nu ? fj.nu : fj.b;
    const Jet h = dot(v, VecJet::constant(t, 1, x) - fj.gamma.truncated(1));
    return {h.value(), h.derivative(1)};
}

double DevelopableSurface::gaussian_curvature(double t, double a) const
{
    const DevelopableLocal L = local(t, 3);
    const double lambda = L.lambda0.value() + a * L.lambda1.value();
    const double scale = 1.0 + std::fabs(L.lambda0.value()) + std::fabs(a * L.lambda1.value());
    if (std::fabs(lambda) <= kZeroTolerance * scale) throw SingularPoint("lambda vanishes at (t, a)");

    const VecJet surf = L.frame.gamma + a * L.delta;
    const VecJet st = surf.differentiate();
    const Vec3 s_t = st.value();
    const Vec3 s_tt = st.derivative(1);
    const Vec3 s_a = L.delta.value();
    const Vec3 s_ta = L.delta.derivative(1);
    const Vec3 n = cross(s_t, s_a) / norm(cross(s_t, s_a));
    const double e = dot(s_t, s_t);
    const double f = dot(s_t, s_a);
    const double g = dot(s_a, s_a);
    const double ll = dot(s_tt, n);
    const double mm = dot(s_ta, n);
    const double nn = 0.0; // S_aa = 0
    return (ll * nn - mm * mm) / (e * g - f * f);
}

SurfaceResiduals surface_residuals(const DevelopableSurface& s, double t)
{
    const DevelopableLocal L = s.local(t, 2);
    const Vec3 delta = L.delta.value();
    return {std::fabs(norm(delta) - 1.0), max_abs(L.delta.derivative(1) - L.beta.value() * L.w.value()),
            std::fabs(dot(delta, L.normal.value()))};
}

} // namespace gluing

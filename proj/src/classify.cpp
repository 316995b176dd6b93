#include "gluing/classify.hpp"

#include "gluing/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gluing {

namespace {

struct NullDerivatives
{
    double eta_lambda;
    double eta_eta_lambda;
};

// lambda = A + a B, eta = d/dt + C d/da
NullDerivatives null_derivatives(const DevelopableLocal& L, double a)
{
    const Jet dA = L.lambda0.differentiate();
    const Jet dB = L.lambda1.differentiate();
    const Jet cb = L.null_a * L.lambda1;
    return {dA.value() + a * dB.value() + cb.value(),
            dA.derivative(1) + a * dB.derivative(1) + cb.derivative(1) + L.null_a.value() * dB.value()};
}

int differential_rank(const DevelopableLocal& L, double a)
{
    const Vec3 s_t = L.frame.gamma.derivative(1) + a * L.delta.derivative(1);
    const Vec3 s_a = L.delta.value();
    return norm(cross(s_t, s_a)) <= kZeroTolerance * (1.0 + norm(s_t)) ? 1 : 2;
}

PointDiagnostics diagnostics(const DevelopableSurface& s, const DevelopableLocal& L, double a, bool beta_nonzero)
{
    PointDiagnostics d;
    d.rho = L.rho.value();
    d.rho_prime = L.rho.derivative(1);
    const NullDerivatives nd = null_derivatives(L, a);
    d.eta_lambda = nd.eta_lambda;
    d.eta_eta_lambda = nd.eta_eta_lambda;
    const double sign = s.kind() == RulingKind::Nu ? -1.0 : 1.0;
    d.eta_lambda_formula = beta_nonzero ? sign * d.rho / (L.beta.value() * L.pair_norm.value())
                                        : std::numeric_limits<double>::quiet_NaN();
    d.rank = differential_rank(L, a);
    return d;
}

double point_scale(const DevelopableLocal& L)
{
    double m = L.rho_scale();
    for (int k = 0; k <= std::min(2, L.kappa.l.order()); ++k) m = std::max(m, 1.0 + std::fabs(L.kappa.l.derivative(k)));
    return m;
}

} // namespace

const char* to_string(Shape s)
{
    switch (s) {
    case Shape::Cylinder: return "cylinder";
    case Shape::Cone: return "cone";
    case Shape::Generic: return "generic";
    }
    return "?";
}

const char* to_string(PointLabel p)
{
    switch (p) {
    case PointLabel::CuspidalEdge: return "cuspidal_edge";
    case PointLabel::Swallowtail: return "swallowtail";
    case PointLabel::Degenerate: return "degenerate";
    case PointLabel::Unresolved: return "unresolved";
    }
    return "?";
}

SurfaceClass classify_surface(const DevelopableSurface& s, int samples, double tol)
{
    SurfaceClass c;
    double beta_scale = 1.0;
    double rho_scale = 1.0;
    const std::vector<double> ts = s.interval().samples(samples);
    for (double t : ts) {
        const DevelopableLocal L = s.local(t, 2);
        c.beta_max = std::max(c.beta_max, std::fabs(L.beta.value()));
        c.rho_max = std::max(c.rho_max, std::fabs(L.rho.value()));
        beta_scale = std::max(beta_scale, L.beta_scale());
        rho_scale = std::max(rho_scale, L.rho_scale());
    }
    c.beta_tol = tol * beta_scale;
    c.rho_tol = tol * rho_scale;
    if (c.beta_max <= c.beta_tol) c.shape = Shape::Cylinder;
    else if (c.rho_max <= c.rho_tol) c.shape = Shape::Cone;
    else c.shape = Shape::Generic;
    if (c.shape == Shape::Cone) c.apex = s.striction(ts[ts.size() / 2]).point;
    return c;
}

FrontCheck front_check(const DevelopableSurface& s, double t)
{
    DevelopableLocal L;
    try {
        L = s.local(t, 2);
    } catch (const AssumptionViolated&) {
        return {false, false};
    }
    FrontCheck out;
    out.hypothesis_met = std::fabs(L.beta.value()) > kZeroTolerance * L.beta_scale();
    const double centre = out.hypothesis_met ? -L.lambda0.value() / L.lambda1.value() : 0.0;
    const Vec3 dn = L.normal.derivative(1);
    const Vec3 delta = L.delta.value();
    out.front = true;
    for (double offset : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const double a = centre + offset;
        const Vec3 s_t = L.frame.gamma.derivative(1) + a * L.delta.derivative(1);
        // Gram determinant of (S_t, n_t) and (S_a, n_a) = (delta, 0) in R^6
        const double g11 = dot(s_t, s_t) + dot(dn, dn);
        const double g22 = dot(delta, delta);
        const double g12 = dot(s_t, delta);
        const double gram = g11 * g22 - g12 * g12;
        if (!(gram > 1e-16 * g11 * g22)) out.front = false;
    }
    return out;
}

SingularPointLabel classify_singularity(const DevelopableSurface& s, double t, double tol)
{
    const DevelopableLocal L = s.local(t, 3);
    if (std::fabs(L.beta.value()) <= tol * L.beta_scale()) throw AssumptionViolated(t, "beta = 0");
    SingularPointLabel out;
    out.t = t;
    out.a = -L.lambda0.value() / L.lambda1.value();
    out.diagnostics = diagnostics(s, L, out.a, true);
    const double scale = point_scale(L);
    if (out.diagnostics.rank != 1) {
        out.label = PointLabel::Unresolved;
        out.reason = "rank of dS is not one";
    } else if (std::fabs(out.diagnostics.rho) > tol * scale) {
        out.label = PointLabel::CuspidalEdge;
        out.reason = "rho != 0";
    } else if (std::fabs(out.diagnostics.rho_prime) > tol * scale) {
        out.label = PointLabel::Swallowtail;
        out.reason = "rho = 0, rho' != 0";
    } else {
        out.label = PointLabel::Degenerate;
        out.reason = "rho = rho' = 0";
    }
    return out;
}

SingularPointLabel classify_singularity_l0(const DevelopableSurface& s, double t0, double tol)
{
    const DevelopableLocal L = s.local(t0, 4);
    const Jet& l = L.kappa.l;
    const double scale = point_scale(L);
    if (std::fabs(l.value()) > tol * scale) throw PreconditionFailed("l does not vanish at t0");

    const bool nu = s.kind() == RulingKind::Nu;
    const Jet& k = nu ? L.kappa.kappa1 : L.kappa.kappa2;
    const double cross_term = nu ? L.kappa.kappa2.value() * L.kappa.kappa3.value() + 3.0 * L.kappa.kappa1.derivative(1)
                                 : L.kappa.kappa1.value() * L.kappa.kappa3.value() - 3.0 * L.kappa.kappa2.derivative(1);
    const double dl = l.derivative(1);
    const double ddl = l.derivative(2);
    const double kv = k.value();
    const bool beta_nonzero = std::fabs(L.beta.value()) > tol * L.beta_scale();
    const auto nonzero = [&](double x) { return std::fabs(x) > tol * scale; };

    SingularPointLabel out;
    out.t = t0;
    out.a = 0.0;
    out.diagnostics = diagnostics(s, L, 0.0, beta_nonzero);
    if (nonzero(dl * kv)) {
        out.label = PointLabel::CuspidalEdge;
        out.reason = nu ? "l' kappa1 != 0" : "l' kappa2 != 0";
    } else if ((!nonzero(dl) && nonzero(kv * ddl)) || (!nonzero(kv) && nonzero(dl * cross_term))) {
        if (beta_nonzero) {
            out.label = PointLabel::Swallowtail;
            out.reason = !nonzero(dl) ? (nu ? "l' = 0, kappa1 l'' != 0" : "l' = 0, kappa2 l'' != 0")
                                      : (nu ? "kappa1 = 0, l'(kappa2 kappa3 + 3 kappa1') != 0"
                                            : "kappa2 = 0, l'(kappa1 kappa3 - 3 kappa2') != 0");
        } else {
            out.label = PointLabel::Degenerate;
            out.reason = "beta = 0";
        }
    } else {
        out.label = PointLabel::Unresolved;
        out.reason = "l = 0 conditions do not decide";
    }
    return out;
}

} // namespace gluing

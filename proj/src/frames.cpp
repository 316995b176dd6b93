#include "gluing/frames.hpp"

#include "gluing/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gluing {

namespace {

// Extra coefficients carried through a backward division so that the kept
// orders are exact to rounding.
constexpr int kDivisionTail = 40;
constexpr double kZeroVector = 1e-12;

int total_multiplicity(const std::vector<SingularParam>& ps)
{
    int m = 0;
    for (const auto& p : ps) m += p.multiplicity;
    return m;
}

bool needs_tail(double t, const std::vector<SingularParam>& ps)
{
    for (const auto& p : ps) {
        const double d = t - p.t0;
        if (d != 0.0 && std::fabs(d) < 0.5) return true;
    }
    return false;
}

const SingularParam* declared_at(double t, const std::vector<SingularParam>& ps)
{
    for (const auto& p : ps)
        if (p.t0 == t) return &p;
    return nullptr;
}

VecJet divide_all(VecJet v, const std::vector<SingularParam>& ps)
{
    for (const auto& p : ps) v = divide_by_root_power(v, p.t0, p.multiplicity);
    return v;
}

std::string format_t(double t)
{
    std::ostringstream os;
    os.precision(17);
    os << t;
    return os.str();
}

class SurfaceFrame final : public FrameSource
{
  public:
    SurfaceFrame(ParametricMap f, int orientation, std::vector<SingularParam> tangent,
                 std::vector<SingularParam> normal)
        : f_(std::move(f)), fv_(differentiate(f_, Var::V)), orientation_(orientation), tangent_(std::move(tangent)),
          normal_(std::move(normal))
    {}

    FrameJets jets(double t, int n) const override
    {
        const int mt = total_multiplicity(tangent_);
        const int mn = total_multiplicity(normal_);
        const int tail = (needs_tail(t, tangent_) || needs_tail(t, normal_)) ? kDivisionTail : 0;
        const int big = n + std::max(mt, mn) + tail + 1;

        const Jet u = Jet::variable(t, big);
        const Jet v = Jet::constant(t, big, 0.0);
        const VecJet gamma = evaluate(f_, u, v);
        const VecJet fu = gamma.differentiate();
        const VecJet fv = evaluate(fv_, u, v);

        const VecJet w = divide_all(fu, tangent_).truncated(n);
        if (max_abs(w.value()) <= kZeroVector) {
            if (declared_at(t, tangent_))
                throw NotDeflatable("gamma' vanishes beyond the declared multiplicity at t=" + format_t(t));
            throw SingularCurvePoint("gamma' vanishes at undeclared t=" + format_t(t));
        }
        const VecJet normal = divide_all(cross(fu, fv), normal_).truncated(n);
        if (max_abs(normal.value()) <= kZeroVector) {
            if (declared_at(t, normal_))
                throw NotDeflatable("f_u x f_v vanishes beyond the declared multiplicity at t=" + format_t(t));
            throw DegenerateNormal("f_u x f_v vanishes at t=" + format_t(t));
        }

        FrameJets out;
        out.gamma = gamma.truncated(n + 1);
        out.e = normalize(w);
        out.nu = static_cast<double>(orientation_) * normalize(normal);
        out.b = cross(out.e, out.nu);
        out.l = dot(fu.truncated(n), out.e);
        return out;
    }

  private:
    ParametricMap f_;
    ParametricMap fv_;
    int orientation_;
    std::vector<SingularParam> tangent_;
    std::vector<SingularParam> normal_;
};

class ExplicitFrame final : public FrameSource
{
  public:
    ExplicitFrame(ParametricMap gamma, ParametricMap e, ParametricMap nu, Expr l)
        : gamma_(std::move(gamma)), e_(std::move(e)), nu_(std::move(nu)), l_(std::move(l))
    {}

    FrameJets jets(double t, int n) const override
    {
        const Jet u = Jet::variable(t, n + 1);
        const Jet v = Jet::constant(t, n + 1, 0.0);
        FrameJets out;
        out.gamma = evaluate(gamma_, u, v);
        out.e = evaluate(e_, u, v).truncated(n);
        out.nu = evaluate(nu_, u, v).truncated(n);
        out.b = cross(out.e, out.nu);
        out.l = evaluate(l_, u, v).truncated(n);
        return out;
    }

  private:
    ParametricMap gamma_, e_, nu_;
    Expr l_;
};

class RotatedFrame final : public FrameSource
{
  public:
    RotatedFrame(FramedCurve base, Expr angle) : base_(std::move(base)), angle_(std::move(angle)) {}

    FrameJets jets(double t, int n) const override
    {
        FrameJets out = base_.jets(t, n);
        const Jet phi = evaluate(angle_, Jet::variable(t, n), Jet::constant(t, n, 0.0));
        const Jet c = cos(phi);
        const Jet s = sin(phi);
        const VecJet nu = c * out.nu + s * out.b;
        const VecJet b = c * out.b - s * out.nu;
        out.nu = nu;
        out.b = b;
        return out;
    }

  private:
    FramedCurve base_;
    Expr angle_;
};

} // namespace

std::vector<double> Interval::samples(int n) const
{
    if (n < 1) return {};
    if (n == 1) return {lo};
    std::vector<double> ts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    ts.back() = hi;
    return ts;
}

FramedCurve::FramedCurve(std::shared_ptr<const FrameSource> source, Interval interval,
                         std::vector<SingularParam> singular)
    : source_(std::move(source)), interval_(interval), singular_(std::move(singular))
{
    if (!(interval_.lo < interval_.hi)) throw ConfigError("empty interval");
}

FrameJets FramedCurve::jets(double t, int order) const { return source_->jets(t, order); }

FramedCurve frame_from_surface(const ParametricMap& f, int orientation, Interval interval,
                               std::vector<SingularParam> singular, std::vector<SingularParam> normal_singular)
{
    if (f.arity != Arity::Surface) throw ArityError("frame extraction needs a surface map");
    if (orientation != 1 && orientation != -1) throw ConfigError("orientation must be +1 or -1");
    if (normal_singular.empty()) normal_singular = singular;
    FramedCurve fc(std::make_shared<SurfaceFrame>(f, orientation, singular, std::move(normal_singular)), interval,
                   singular);
    std::vector<double> ts = interval.samples(kFramePreSamples);
    for (const auto& p : singular)
        if (interval.contains(p.t0)) ts.push_back(p.t0);
    for (double t : ts) fc.jets(t, 1);
    return fc;
}

FramedCurve frame_explicit(const ParametricMap& gamma, const ParametricMap& e, const ParametricMap& nu,
                           const Expr& l, Interval interval, std::vector<SingularParam> singular)
{
    for (const auto* m : {&gamma, &e, &nu})
        if (m->arity != Arity::Curve) throw ArityError("explicit frame fields must be curves in u");
    if (uses(l, Var::V)) throw ArityError("length function must depend on u only");
    FramedCurve fc(std::make_shared<ExplicitFrame>(gamma, e, nu, l), interval, std::move(singular));
    for (double t : interval.samples(kFramePreSamples)) {
        const FrameJets fj = fc.jets(t, 0);
        const Vec3 ev = fj.e.value();
        const Vec3 nv = fj.nu.value();
        const double checks[] = {std::fabs(norm(ev) - 1.0), std::fabs(norm(nv) - 1.0), std::fabs(dot(ev, nv)),
                                 max_abs(fj.gamma.coeff(1) - fj.l.value() * ev)};
        static constexpr const char* names[] = {"|e| = 1", "|nu| = 1", "e.nu = 0", "gamma' = l e"};
        for (int i = 0; i < 4; ++i)
            if (!(checks[i] <= kExplicitFrameTolerance)) throw FrameInvalid(t, names[i], checks[i]);
    }
    return fc;
}

FramedCurve rotate_frame(const FramedCurve& fc, const Expr& angle)
{
    if (uses(angle, Var::V)) throw ArityError("rotation angle must depend on u only");
    return FramedCurve(std::make_shared<RotatedFrame>(fc, angle), fc.interval(), fc.singular_params());
}

FrameInvariants invariants(const FramedCurve& fc, double t, int order)
{
    const FrameJets fj = fc.jets(t, order + 1);
    const VecJet de = fj.e.differentiate();
    const VecJet dnu = fj.nu.differentiate();
    return {dot(de, fj.nu), dot(de, fj.b), dot(dnu, fj.b), fj.l.truncated(order)};
}

GeodesicInvariants geodesic_invariants(const FramedCurve& fc, double t, int order)
{
    const FrameJets fj = fc.jets(t, order + 1);
    if (std::fabs(fj.l.value()) <= kZeroVector) throw SingularCurvePoint("l vanishes at t=" + format_t(t));
    const VecJet g1 = fj.gamma.differentiate();
    const VecJet g2 = g1.differentiate();
    const VecJet dnu = fj.nu.differentiate();
    const Jet speed2 = dot(g1, g1);
    const Jet speed = sqrt(speed2);
    return {dot(g2, fj.nu) / speed2, dot(cross(g1, g2), fj.nu) / (speed2 * speed),
            dot(cross(g1, fj.nu), dnu) / speed2};
}

FrameResiduals frame_residuals(const FramedCurve& fc, double t)
{
    const FrameJets fj = fc.jets(t, 1);
    const FrameInvariants k = invariants(fc, t, 0);
    const Vec3 e = fj.e.value(), nu = fj.nu.value(), b = fj.b.value();
    const double k1 = k.kappa1.value(), k2 = k.kappa2.value(), k3 = k.kappa3.value(), l = k.l.value();
    FrameResiduals r;
    r.orthonormality = std::max({std::fabs(norm(e) - 1.0), std::fabs(norm(nu) - 1.0), std::fabs(dot(e, nu))});
    r.tangent = max_abs(fj.gamma.derivative(1) - l * e);
    r.frenet = std::max({max_abs(fj.e.derivative(1) - (k1 * nu + k2 * b)),
                         max_abs(fj.nu.derivative(1) - (-k1 * e + k3 * b)),
                         max_abs(fj.b.derivative(1) - (-k2 * e - k3 * nu))});
    if (std::fabs(l) <= kZeroVector) {
        r.geodesic = std::numeric_limits<double>::quiet_NaN();
    } else {
        const GeodesicInvariants g = geodesic_invariants(fc, t, 0);
        r.geodesic = std::max({std::fabs(k1 - l * g.kappa_n.value()), std::fabs(k2 + std::fabs(l) * g.kappa_g.value()),
                               std::fabs(k3 - l * g.tau_g.value())});
    }
    return r;
}

} // namespace gluing

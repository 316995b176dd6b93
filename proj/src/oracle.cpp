#include "gluing/oracle.hpp"

#include "gluing/errors.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace gluing::oracle {

namespace {

struct Stencil
{
    std::vector<int> offsets;
    std::vector<double> weights;
    double denom;   // multiplied by h^order
    int accuracy;
};

Stencil stencil(Scheme scheme, int order)
{
    if (scheme == Scheme::Central2) {
        switch (order) {
        case 1: return {{1, -1}, {1, -1}, 2, 2};
        case 2: return {{1, 0, -1}, {1, -2, 1}, 1, 2};
        case 3: return {{2, 1, -1, -2}, {1, -2, 2, -1}, 2, 2};
        }
    } else {
        switch (order) {
        case 1: return {{2, 1, -1, -2}, {-1, 8, -8, 1}, 12, 4};
        case 2: return {{2, 1, 0, -1, -2}, {-1, 16, -30, 16, -1}, 12, 4};
        case 3: return {{3, 2, 1, -1, -2, -3}, {-1, 8, -13, 13, -8, 1}, 8, 4};
        }
    }
    throw std::invalid_argument("finite differences support orders 1 to 3");
}

std::vector<double> apply_stencil(const VectorFn& f, double t, double h, int order, const Stencil& st)
{
    std::vector<double> acc;
    for (std::size_t i = 0; i < st.offsets.size(); ++i) {
        const std::vector<double> v = f(t + st.offsets[i] * h);
        if (acc.empty()) acc.assign(v.size(), 0.0);
        for (std::size_t j = 0; j < v.size(); ++j) acc[j] += st.weights[i] * v[j];
    }
    const double scale = st.denom * std::pow(h, order);
    for (double& x : acc) x /= scale;
    return acc;
}

VectorFn lift(const std::function<Vec3(double)>& f)
{
    return [f](double x) {
        const Vec3 v = f(x);
        return std::vector<double>{v.x, v.y, v.z};
    };
}

Vec3 fd_vec(const std::function<Vec3(double)>& f, double t, int order, const FdConfig& cfg)
{
    const std::vector<double> d = fd_derivative(lift(f), t, order, cfg);
    return {d[0], d[1], d[2]};
}

std::string format17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::vector<double> fd_derivative(const VectorFn& f, double t, int order, const FdConfig& cfg)
{
    if (!(cfg.step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    const Stencil st = stencil(cfg.scheme, order);
    const double h = std::pow(cfg.step, 1.0 / order);
    std::vector<double> coarse = apply_stencil(f, t, h, order, st);
    if (!cfg.richardson) return coarse;
    const std::vector<double> fine = apply_stencil(f, t, 0.5 * h, order, st);
    const double p = std::pow(2.0, st.accuracy);
    for (std::size_t j = 0; j < coarse.size(); ++j) coarse[j] = (p * fine[j] - coarse[j]) / (p - 1.0);
    return coarse;
}

double fd_derivative(const ScalarFn& f, double t, int order, const FdConfig& cfg)
{
    return fd_derivative(VectorFn([&f](double x) { return std::vector<double>{f(x)}; }), t, order, cfg)[0];
}

double lambda_direct(const DevelopableSurface& s, double t, double a, const FdConfig& cfg)
{
    const Vec3 s_t = fd_vec([&](double x) { return s.point(x, a); }, t, 1, cfg);
    const Vec3 s_a = fd_vec([&](double x) { return s.point(t, x); }, a, 1, cfg);
    const FrameJets fj = s.curve().at(t);
    const Vec3 normal = s.kind() == RulingKind::Nu ? fj.nu.value() : fj.b.value();
    return det(s_t, s_a, normal);
}

double lambda_zero(const DevelopableSurface& s, double t, double a_lo, double a_hi, const FdConfig& cfg)
{
    double f_lo = lambda_direct(s, t, a_lo, cfg);
    double f_hi = lambda_direct(s, t, a_hi, cfg);
    if (f_lo == 0.0) return a_lo;
    if (f_hi == 0.0) return a_hi;
    if ((f_lo < 0.0) == (f_hi < 0.0)) throw std::invalid_argument("lambda does not change sign on the bracket");
    // regula falsi, Illinois variant
    int side = 0;
    double a = a_lo;
    for (int it = 0; it < 100; ++it) {
        a = (a_lo * f_hi - a_hi * f_lo) / (f_hi - f_lo);
        const double fa = lambda_direct(s, t, a, cfg);
        if (fa == 0.0 || std::fabs(a_hi - a_lo) <= 1e-14 * (1.0 + std::fabs(a))) break;
        if ((fa < 0.0) == (f_hi < 0.0)) {
            a_hi = a;
            f_hi = fa;
            if (side == -1) f_lo *= 0.5;
            side = -1;
        } else {
            a_lo = a;
            f_lo = fa;
            if (side == 1) f_hi *= 0.5;
            side = 1;
        }
        if (std::fabs(fa) <= 1e-15) break;
    }
    return a;
}

double striction_search(const DevelopableSurface& s, double t, const FdConfig& cfg)
{
    const Vec3 dc = fd_vec([&](double x) { return s.curve().at(x).gamma.value(); }, t, 1, cfg);
    const Vec3 dd = fd_vec([&](double x) { return s.ruling(x); }, t, 1, cfg);
    const double dd2 = dot(dd, dd);
    if (dd2 <= 1e-18) throw CylindricalAt(t);
    return -dot(dc, dd) / dd2;
}

double gaussian_curvature_fd(const DevelopableSurface& s, double t, double a, const FdConfig& cfg)
{
    auto p = [&](double x, double y) { return s.point(x, y); };
    const Vec3 s_t = fd_vec([&](double x) { return p(x, a); }, t, 1, cfg);
    const Vec3 s_a = fd_vec([&](double y) { return p(t, y); }, a, 1, cfg);
    const Vec3 s_tt = fd_vec([&](double x) { return p(x, a); }, t, 2, cfg);
    const Vec3 s_aa = fd_vec([&](double y) { return p(t, y); }, a, 2, cfg);
    const Vec3 s_ta = fd_vec([&](double y) { return fd_vec([&](double x) { return p(x, y); }, t, 1, cfg); }, a, 1, cfg);
    const Vec3 n = cross(s_t, s_a) / norm(cross(s_t, s_a));
    const double e = dot(s_t, s_t), f = dot(s_t, s_a), g = dot(s_a, s_a);
    const double l = dot(s_tt, n), m = dot(s_ta, n), nn = dot(s_aa, n);
    return (l * nn - m * m) / (e * g - f * f);
}

double rho_prime_kappa1_zero_l_zero(const FrameInvariants& k)
{
    const double k2 = k.kappa2.value(), k3 = k.kappa3.value(), dk1 = k.kappa1.derivative(1);
    const double beta = k2 * k3 * k3 + dk1 * k3;   // beta with k1 = 0
    return beta * (k2 * k3 + 3.0 * dk1) * k.l.derivative(1);
}

double rho_prime_kappa1_zero(const FrameInvariants& k)
{
    const double k2 = k.kappa2.value(), k3 = k.kappa3.value(), l = k.l.value();
    const double inner = k3 * (4.0 * l * k.kappa2.derivative(1) - k2 * k.l.derivative(1)) +
                         6.0 * l * (k2 * k.kappa3.derivative(1) + k.kappa1.derivative(2));
    return k2 * k3 * k3 / 4.0 * inner;
}

double eta_eta_lambda_kappa1_zero_l_zero(const FrameInvariants& k)
{
    const double k2 = k.kappa2.value(), k3 = k.kappa3.value();
    return -(k2 * k3 + 3.0 * k.kappa1.derivative(1)) * k.l.derivative(1) / std::fabs(k3);
}

double eta_eta_lambda_kappa1_zero(const FrameInvariants& k)
{
    const double k2 = k.kappa2.value(), k3 = k.kappa3.value(), l = k.l.value();
    const double inner = k3 * (4.0 * l * k.kappa2.derivative(1) - k2 * k.l.derivative(1)) +
                         6.0 * l * (k2 * k.kappa3.derivative(1) + k.kappa1.derivative(2));
    return -inner / (2.0 * std::fabs(k3));
}

Comparison compare(std::string fixture, std::string quantity, double t, double jet_value, double oracle_value,
                   double rel_tol, double abs_floor)
{
    const double denom = std::max(std::fabs(oracle_value), abs_floor / rel_tol);
    return {std::move(fixture), std::move(quantity), t, jet_value, oracle_value,
            std::fabs(jet_value - oracle_value) / denom};
}

void require(const Comparison& c, double rel_tol)
{
    if (!(c.rel_err <= rel_tol)) {
        std::ostringstream os;
        os << c.fixture << ": " << c.quantity << " at t=" << format17(c.t) << " jet=" << format17(c.jet_value)
           << " oracle=" << format17(c.oracle_value) << " rel_err=" << format17(c.rel_err);
        throw OracleMismatch(os.str());
    }
}

std::vector<Comparison> derivative_checks(const std::string& fixture, const FramedCurve& fc,
                                          const std::vector<double>& ts, const FdConfig& cfg)
{
    static const std::array<const char*, 8> names = {"l", "kappa1", "kappa2", "kappa3",
                                                     "beta_nu", "rho_nu", "beta_b", "rho_b"};
    const std::array<DevelopableSurface, 2> surfaces = {DevelopableSurface::build(fc, RulingKind::Nu, 0),
                                                         DevelopableSurface::build(fc, RulingKind::B, 0)};
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    auto values = [&](double x) {
        std::vector<double> v(names.size(), nan);
        const FrameInvariants k = invariants(fc, x, 0);
        v[0] = k.l.value();
        v[1] = k.kappa1.value();
        v[2] = k.kappa2.value();
        v[3] = k.kappa3.value();
        for (std::size_t i = 0; i < 2; ++i) {
            try {
                const DevelopableLocal L = surfaces[i].local(x, 2);
                v[4 + 2 * i] = L.beta.value();
                v[5 + 2 * i] = L.rho.value();
            } catch (const AssumptionViolated&) {
            }
        }
        return v;
    };

    std::vector<Comparison> rows;
    for (double t : ts) {
        std::array<std::optional<Jet>, 8> jets;
        const FrameInvariants k = invariants(fc, t, 3);
        jets[0] = k.l;
        jets[1] = k.kappa1;
        jets[2] = k.kappa2;
        jets[3] = k.kappa3;
        for (std::size_t i = 0; i < 2; ++i) {
            try {
                const DevelopableLocal L = surfaces[i].local(t, 5);
                jets[4 + 2 * i] = L.beta;
                jets[5 + 2 * i] = L.rho;
            } catch (const AssumptionViolated&) {
            }
        }
        for (int order = 1; order <= 3; ++order) {
            const std::vector<double> fd = fd_derivative(VectorFn(values), t, order, cfg);
            for (std::size_t q = 0; q < names.size(); ++q) {
                if (!jets[q] || std::isnan(fd[q])) continue;
                rows.push_back(compare(fixture, std::string(names[q]) + std::string(static_cast<std::size_t>(order), '\''),
                                       t, jets[q]->derivative(order), fd[q]));
            }
        }
    }
    return rows;
}

void write_csv(std::ostream& os, const std::vector<Comparison>& rows)
{
    os << "fixture,quantity,t,jet_value,oracle_value,rel_err\n";
    for (const auto& r : rows)
        os << r.fixture << ',' << r.quantity << ',' << format17(r.t) << ',' << format17(r.jet_value) << ','
           << format17(r.oracle_value) << ',' << format17(r.rel_err) << '\n';
}

} // namespace gluing::oracle

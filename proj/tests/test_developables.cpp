#include "gluing/developables.hpp"
#include "gluing/errors.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gluing;
using fixtures::extracted;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

DevelopableSurface surface(int n, int which, RulingKind kind)
{
    return DevelopableSurface::build(extracted(n, which), kind);
}

FramedCurve flat_line()
{
    return frame_explicit(parse_map("[u, 0, 0]"), parse_map("[1, 0, 0]"), parse_map("[0, 0, 1]"), parse_expr("1"),
                          {0, 1});
}

} // namespace

TEST(Beta, ConeOverCircle)
{
    const DevelopableSurface s = surface(4, 2, RulingKind::Nu);
    for (double u : {0.2, 1.0, 2.9}) {
        const DevelopableLocal L = s.local(u, 3);
        EXPECT_NEAR(L.beta.value(), 1.0 / (2.0 * std::sqrt(2.0)), 1e-9);
        EXPECT_NEAR(L.rho.value(), 0.0, 1e-9);
    }
}

TEST(Beta, HelixCylinder)
{
    const DevelopableSurface s = surface(1, 2, RulingKind::Nu);
    for (double u : s.interval().samples(21)) EXPECT_NEAR(s.local(u, 2).beta.value(), 0.0, 1e-9);
}

TEST(Build, VanishingCurvaturePairRejected)
{
    EXPECT_THROW((void)DevelopableSurface::build(flat_line(), RulingKind::Nu), AssumptionViolated);
    EXPECT_THROW((void)DevelopableSurface::build(flat_line(), RulingKind::B), AssumptionViolated);
}

TEST(Build, LazyCheckDefersToLocal)
{
    const DevelopableSurface s = DevelopableSurface::build(flat_line(), RulingKind::Nu, 0);
    EXPECT_THROW((void)s.local(0.5, 2), AssumptionViolated);
}

TEST(Evaluate, BaseCurveAtZero)
{
    for (int n : {1, 2, 4, 5, 6}) {
        const DevelopableSurface s = surface(n, 2, RulingKind::Nu);
        for (double t : s.interval().samples(7))
            EXPECT_NEAR(max_abs(s.point(t, 0.0) - s.curve().at(t).gamma.value()), 0.0, 1e-15) << n;
    }
}

TEST(Evaluate, ConeApexAtUnitRulingDistance)
{
    const DevelopableSurface s = surface(4, 2, RulingKind::Nu);
    for (double u : {0.2, 1.1, 2.9}) EXPECT_NEAR(max_abs(s.point(u, -1.0)), 0.0, 1e-12);
}

TEST(Evaluate, CuspGlueEnvelopeIsPrintedCylinder)
{
    // printed surface (u^2, u^3 + v, v) in unit-ruling parametrization: a = sqrt2 v
    const DevelopableSurface s = surface(5, 2, RulingKind::Nu);
    for (double u : {-0.8, 0.0, 0.3}) {
        for (double v : {-0.5, 0.7}) {
            const Vec3 p = s.point(u, std::sqrt(2.0) * v);
            EXPECT_NEAR(max_abs(p - Vec3{u * u, u * u * u + v, v}), 0.0, 1e-12);
        }
    }
}

TEST(Striction, ConeParameterAndPoint)
{
    const DevelopableSurface s = surface(4, 2, RulingKind::Nu);
    for (double u : {0.4, 2.0}) {
        const StrictionPoint p = s.striction(u);
        EXPECT_NEAR(p.s, -1.0, 1e-12);
        EXPECT_NEAR(max_abs(p.point), 0.0, 1e-12);
    }
}

TEST(Striction, ZeroWhereSpeedVanishes)
{
    const DevelopableSurface s = surface(6, 2, RulingKind::Nu);
    EXPECT_NEAR(s.striction(0.0).s, 0.0, 1e-12);
}

TEST(Striction, CylinderRejected)
{
    EXPECT_THROW((void)surface(1, 2, RulingKind::Nu).striction(0.5), CylindricalAt);
}

TEST(Envelope, OffsetAlongDefiningNormal)
{
    const DevelopableSurface s = surface(2, 2, RulingKind::Nu);
    const FrameJets j = s.curve().at(0.6);
    const auto [h, dh] = s.envelope_residual(0.6, j.gamma.value() + j.nu.value());
    EXPECT_NEAR(h, 1.0, 1e-14);
    const auto [h0, dh0] = s.envelope_residual(0.6, j.gamma.value());
    EXPECT_NEAR(h0, 0.0, 1e-15);
    EXPECT_NEAR(dh0, 0.0, 1e-15);
}

TEST(Gauss, CircularCylinderIsFlat)
{
    EXPECT_NEAR(surface(3, 1, RulingKind::Nu).gaussian_curvature(1.0, 0.5), 0.0, 1e-8);
}

TEST(Gauss, ConeIsFlat)
{
    EXPECT_NEAR(surface(4, 2, RulingKind::Nu).gaussian_curvature(1.0, 0.3), 0.0, 1e-8);
}

TEST(Gauss, SingularOnStriction)
{
    const DevelopableSurface s = surface(4, 2, RulingKind::Nu);
    EXPECT_THROW((void)s.gaussian_curvature(1.0, -1.0), SingularPoint);
}

TEST(Lambda, ClosedFormAtBaseCurve)
{
    const DevelopableSurface s = surface(4, 2, RulingKind::Nu);
    const DevelopableLocal L = s.local(1.3, 2);
    EXPECT_NEAR(L.lambda0.value(), -std::sqrt(2.0) / 2 * -kInvSqrt2 / L.pair_norm.value(), 1e-12);
}

// every fixture surface: ruling identities, envelope on-surface, flatness, striction
TEST(DevelopableProperty, AllFixtures)
{
    for (int n = 1; n <= 6; ++n) {
        for (int which = 1; which <= 2; ++which) {
            const FramedCurve fc = extracted(n, which);
            for (RulingKind kind : {RulingKind::Nu, RulingKind::B}) {
                std::optional<DevelopableSurface> s;
                try {
                    s = DevelopableSurface::build(fc, kind);
                } catch (const AssumptionViolated&) {
                    continue;
                }
                const std::string tag = std::to_string(n) + "/" + std::to_string(which) + "/" + to_string(kind);
                for (double t : fc.interval().samples(201)) {
                    const SurfaceResiduals r = surface_residuals(*s, t);
                    EXPECT_LE(r.unit, 1e-10) << tag << " t=" << t;
                    EXPECT_LE(r.derivative, 1e-9) << tag << " t=" << t;
                    EXPECT_LE(r.orthogonal, 1e-10) << tag << " t=" << t;
                }
                for (double t : fc.interval().samples(23)) {
                    const DevelopableLocal L = s->local(t, 2);
                    for (double a : {-0.9, -0.3, 0.4, 1.1}) {
                        const auto [h, dh] = s->envelope_residual(t, s->point(t, a));
                        EXPECT_LE(std::fabs(h), 1e-9) << tag;
                        EXPECT_LE(std::fabs(dh), 1e-9) << tag;
                        const double lambda = L.lambda0.value() + a * L.lambda1.value();
                        if (std::fabs(lambda) > 1e-3) EXPECT_LE(std::fabs(s->gaussian_curvature(t, a)), 1e-8) << tag;
                    }
                    if (std::fabs(L.beta.value()) > kZeroTolerance * L.beta_scale()) {
                        // striction curve tangent is parallel to the ruling
                        const Jet sj = -(L.lambda0.truncated(1) / L.lambda1.truncated(1));
                        const VecJet sigma = L.frame.gamma.truncated(1) + sj * L.delta.truncated(1);
                        EXPECT_LE(norm(cross(sigma.derivative(1), L.delta.value())), 1e-8) << tag << " t=" << t;
                        const double sv = s->striction(t).s;
                        EXPECT_NEAR(L.lambda0.value() + sv * L.lambda1.value(), 0.0, 1e-9);
                        const double lo = L.lambda0.value() + (sv - 0.5) * L.lambda1.value();
                        const double hi = L.lambda0.value() + (sv + 0.5) * L.lambda1.value();
                        EXPECT_LT(lo * hi, 0.0) << tag;
                    }
                }
            }
        }
    }
}

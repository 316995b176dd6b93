#include "gluing/errors.hpp"
#include "gluing/frames.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gluing;
using fixtures::extracted;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void expect_kappa(const FrameInvariants& k, double k1, double k2, double k3, double tol = 1e-9)
{
    EXPECT_NEAR(k.kappa1.value(), k1, tol);
    EXPECT_NEAR(k.kappa2.value(), k2, tol);
    EXPECT_NEAR(k.kappa3.value(), k3, tol);
}

} // namespace

TEST(Extract, SphereBandEquator)
{
    const FramedCurve fc = extracted(3, 1);
    for (double u : {0.3, 1.0, 2.5}) {
        const FrameJets j = fc.at(u);
        EXPECT_NEAR(max_abs(j.nu.value() - Vec3{-std::cos(u), -std::sin(u), 0}), 0.0, 1e-12);
        expect_kappa(invariants(fc, u, 0), 1, 0, 0);
    }
}

TEST(Extract, CuspCurveDeflatesAtRoot)
{
    const FramedCurve fc = extracted(5, 1);
    const FrameJets j = fc.jets(0.0, 3);
    EXPECT_NEAR(max_abs(j.e.value() - Vec3{1, 0, 0}), 0.0, 1e-12);
    EXPECT_NEAR(j.l.value(), 0.0, 1e-12);
    EXPECT_NEAR(j.l.derivative(1), 2.0, 1e-9);
    for (double u : {-0.9, -0.2, 0.001, 0.4}) EXPECT_NEAR(fc.at(u).l.value(), u * std::sqrt(4 + 9 * u * u), 1e-12);
}

TEST(Extract, FlatSheet)
{
    const FramedCurve fc = frame_from_surface(parse_map("[u, v, 0]"), 1, {-1, 1});
    const FrameJets j = fc.at(0.3);
    EXPECT_NEAR(max_abs(j.nu.value() - Vec3{0, 0, 1}), 0.0, 1e-15);
    EXPECT_NEAR(j.l.value(), 1.0, 1e-15);
    expect_kappa(invariants(fc, 0.3, 0), 0, 0, 0, 1e-15);
}

TEST(Extract, OrientationFlipsNormal)
{
    const FramedCurve a = frame_from_surface(parse_map("[u, v, 0]"), 1, {-1, 1});
    const FramedCurve b = frame_from_surface(parse_map("[u, v, 0]"), -1, {-1, 1});
    EXPECT_NEAR(max_abs(a.at(0.2).nu.value() + b.at(0.2).nu.value()), 0.0, 1e-15);
}

TEST(Extract, UndeclaredSingularPointRejected)
{
    const FramedCurve fc = frame_from_surface(parse_map("[u^2, u^3 + v, 0]"), 1, {-1, 1});
    EXPECT_THROW((void)fc.at(0.0), SingularCurvePoint);
}

TEST(Extract, DegenerateNormalRejected)
{
    EXPECT_THROW((void)frame_from_surface(parse_map("[u, u + v*0, 0]"), 1, {-1, 1}), DegenerateNormal);
}

TEST(Extract, EmptyIntervalRejected)
{
    EXPECT_THROW((void)frame_from_surface(parse_map("[u, v, 0]"), 1, {1, 1}), ConfigError);
}

TEST(Explicit, HelixFrameAccepted)
{
    const FramedCurve fc = frame_explicit(parse_map("[cos(u), sin(u), u]"),
                                          parse_map("[-sin(u)/sqrt2, cos(u)/sqrt2, 1/sqrt2]"),
                                          parse_map("[cos(u), sin(u), 0]"), parse_expr("sqrt2"), {-1.2, 1.2});
    expect_kappa(invariants(fc, 1.0, 0), -kInvSqrt2, 0, kInvSqrt2);
}

TEST(Explicit, NonOrthogonalRejected)
{
    try {
        (void)frame_explicit(parse_map("[u, 0, 0]"), parse_map("[1, 0, 0]"), parse_map("[1, 0, 0]"), parse_expr("1"),
                             {0, 1});
        FAIL();
    } catch (const FrameInvalid& e) {
        EXPECT_EQ(e.invariant(), "e.nu = 0");
    }
}

TEST(Explicit, PrintedConeNormalNotUnit)
{
    try {
        (void)frame_explicit(parse_map("[cos(u), sin(u), 1]"), parse_map("[-sin(u), cos(u), 0]"),
                             parse_map("[cos(u), sin(u), 1]"), parse_expr("1"), {-3, 3});
        FAIL();
    } catch (const FrameInvalid& e) {
        EXPECT_EQ(e.invariant(), "|nu| = 1");
        EXPECT_NEAR(e.residual(), std::sqrt(2.0) - 1.0, 1e-12);
    }
}

TEST(Explicit, WrongSpeedRejected)
{
    try {
        (void)frame_explicit(parse_map("[2*u, 0, 0]"), parse_map("[1, 0, 0]"), parse_map("[0, 0, 1]"), parse_expr("1"),
                             {0, 1});
        FAIL();
    } catch (const FrameInvalid& e) {
        EXPECT_EQ(e.invariant(), "gamma' = l e");
    }
}

TEST(Invariants, HelixSecondFrame)
{
    const FramedCurve fc = extracted(1, 2);
    for (double u : {-1.0, 0.0, 1.0}) expect_kappa(invariants(fc, u, 0), -kInvSqrt2, 0, kInvSqrt2);
}

TEST(Invariants, SphereBandOverDisk)
{
    const FramedCurve fc = extracted(4, 2);
    for (double u : {0.3, 1.2, 2.8}) {
        const FrameInvariants k = invariants(fc, u, 1);
        expect_kappa(k, -kInvSqrt2, kInvSqrt2, 0);
        EXPECT_NEAR(k.kappa1.derivative(1), 0.0, 1e-9);
        EXPECT_NEAR(k.kappa2.derivative(1), 0.0, 1e-9);
    }
}

TEST(Invariants, CuspCurveFirstFrame)
{
    const FramedCurve fc = extracted(5, 1);
    for (double u : {-0.7, 0.0, 0.25, 1.0}) expect_kappa(invariants(fc, u, 0), 0, -6.0 / (4 + 9 * u * u), 0);
}

TEST(Invariants, StraightLine)
{
    const FramedCurve fc = frame_explicit(parse_map("[u, 0, 0]"), parse_map("[1, 0, 0]"), parse_map("[0, 0, 1]"),
                                          parse_expr("1"), {0, 1});
    expect_kappa(invariants(fc, 0.5, 2), 0, 0, 0, 0.0);
}

TEST(Geodesic, EquatorNormalCurvature)
{
    const GeodesicInvariants g = geodesic_invariants(extracted(3, 1), 1.0);
    EXPECT_NEAR(g.kappa_n.value(), 1.0, 1e-12);
    EXPECT_NEAR(g.kappa_g.value(), 0.0, 1e-12);
    EXPECT_NEAR(g.tau_g.value(), 0.0, 1e-12);
}

TEST(Geodesic, SingularPointRejected)
{
    EXPECT_THROW((void)geodesic_invariants(extracted(5, 1), 0.0), SingularCurvePoint);
}

TEST(Rotate, QuarterTurnSwapsNormalAndBinormal)
{
    const FramedCurve fc = extracted(1, 1);
    const FramedCurve r = rotate_frame(fc, parse_expr("pi/2"));
    const FrameJets a = fc.at(0.4), b = r.at(0.4);
    EXPECT_NEAR(max_abs(b.nu.value() - a.b.value()), 0.0, 1e-15);
    EXPECT_NEAR(max_abs(b.b.value() + a.nu.value()), 0.0, 1e-15);
}

// structural identities hold at every sample of every fixture frame
TEST(FrameProperty, ResidualsOnAllFixtures)
{
    for (int n = 1; n <= 6; ++n) {
        for (int which = 1; which <= 2; ++which) {
            const FramedCurve fc = extracted(n, which);
            for (double t : fc.interval().samples(201)) {
                const FrameResiduals r = frame_residuals(fc, t);
                EXPECT_LE(r.orthonormality, 1e-10) << n << "/" << which << " t=" << t;
                EXPECT_LE(r.tangent, 1e-9) << n << "/" << which << " t=" << t;
                EXPECT_LE(r.frenet, 1e-9) << n << "/" << which << " t=" << t;
                if (!std::isnan(r.geodesic)) EXPECT_LE(r.geodesic, 1e-9) << n << "/" << which << " t=" << t;
            }
        }
    }
}

TEST(FrameProperty, InvariantJetsAreDerivativesOfValues)
{
    const FramedCurve fc = extracted(6, 2);
    const double t = 0.37, h = 1e-5;
    const FrameInvariants k = invariants(fc, t, 2);
    const double d = (invariants(fc, t + h, 0).kappa2.value() - invariants(fc, t - h, 0).kappa2.value()) / (2 * h);
    EXPECT_NEAR(k.kappa2.derivative(1), d, 1e-6 * (1 + std::fabs(d)));
}

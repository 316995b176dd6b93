#include "gluing/errors.hpp"
#include "gluing/glue.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace gluing;
using fixtures::extracted;

namespace {

bool has_surface_label(const GlueLabel& g, const std::string& name, bool cylindrical, bool conical)
{
    return std::any_of(g.surfaces.begin(), g.surfaces.end(), [&](const SurfaceGlueLabel& s) {
        return s.name == name && s.cylindrical == cylindrical && s.conical == conical;
    });
}

const PointGlueLabel* point_label(const GlueLabel& g, const std::string& name)
{
    for (const auto& p : g.points)
        if (p.surface == name) return &p;
    return nullptr;
}

} // namespace

TEST(Theta, SphereOverPlaneIsQuarterTurn)
{
    const GlueScene g = fixtures::glue(3);
    for (double u : g.interval().samples(9)) {
        const Jet th = g.theta(u, 2);
        EXPECT_NEAR(th.value(), -std::numbers::pi / 2, 1e-12);
        EXPECT_NEAR(th.derivative(1), 0.0, 1e-12);
    }
}

TEST(Theta, SwallowtailPairCosineMatchesPrint)
{
    const GlueScene g = fixtures::glue(6);
    for (double u : {-0.9, -0.3, 0.0, 0.2, 0.8}) {
        const double th = g.theta(u, 0).value();
        EXPECT_NEAR(std::cos(th), u * u / std::sqrt(1 + u * u + u * u * u * u), 1e-12);
        EXPECT_NEAR(std::fabs(std::sin(th)), std::sqrt((1 + u * u) / (1 + u * u + u * u * u * u)), 1e-12);
    }
}

TEST(Theta, SelfGlueIsZero)
{
    const GlueScene g = make_glue(extracted(4, 2), extracted(4, 2), 51);
    for (double u : {0.3, 1.7}) {
        EXPECT_NEAR(g.theta(u, 0).value(), 0.0, 1e-15);
        const FrameInvariants a = invariants(g.frame(1), u, 0), b = invariants(g.frame(2), u, 0);
        EXPECT_NEAR(a.kappa1.value(), b.kappa1.value(), 1e-15);
        EXPECT_NEAR(a.kappa2.value(), b.kappa2.value(), 1e-15);
        EXPECT_NEAR(a.kappa3.value(), b.kappa3.value(), 1e-15);
        EXPECT_LE(rotation_identities(g, u).max(), 1e-12);
    }
}

TEST(Theta, ContinuousThroughWrap)
{
    const GlueScene g = fixtures::glue(4);
    EXPECT_NEAR(g.theta(0.2, 0).value(), 3 * std::numbers::pi / 4, 1e-12);
    EXPECT_NEAR(g.theta(2.9, 0).value(), 3 * std::numbers::pi / 4, 1e-12);
}

TEST(Glue, CurveMismatchRejected)
{
    EXPECT_THROW((void)make_glue(extracted(5, 1), extracted(6, 2), 21), GluingMismatch);
}

TEST(Rotation, CuspPairAtHalf)
{
    EXPECT_LE(rotation_identities(fixtures::glue(5), 0.5).max(), 1e-9);
}

TEST(Rotation, HelixPairAtOne)
{
    EXPECT_LE(rotation_identities(fixtures::glue(1), 1.0).max(), 1e-9);
}

TEST(Labels, CylinderAndCone)
{
    const GlueLabel g = classify_glue(fixtures::glue(2));
    EXPECT_TRUE(has_surface_label(g, "S_nu1", true, false));
    EXPECT_TRUE(has_surface_label(g, "S_nu2", false, true));
}

TEST(Labels, HelixCylindrical)
{
    EXPECT_TRUE(has_surface_label(classify_glue(fixtures::glue(1)), "S_nu2", true, false));
}

TEST(Labels, CuspidalEdgy)
{
    const GlueLabel g = classify_glue(fixtures::glue(5));
    const PointGlueLabel* p = point_label(g, "S_nu2");
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->label.label, PointLabel::CuspidalEdge);
    EXPECT_EQ(p->label.t, 0.0);
    EXPECT_EQ(p->source, "l = 0");
}

TEST(Labels, Swallowtailed)
{
    const GlueLabel g = classify_glue(fixtures::glue(6));
    const PointGlueLabel* p = point_label(g, "S_nu2");
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->label.label, PointLabel::Swallowtail);
    EXPECT_EQ(p->label.t, 0.0);
}

TEST(SpecialAngle, QuarterTurnSwapsRulingKinds)
{
    const SpecialAngleReport r = special_angle_equivalences(fixtures::glue(3));
    EXPECT_EQ(std::abs(r.k), 1);
    EXPECT_EQ(r.lhs, "S_nu2");
    EXPECT_EQ(r.rhs, "S_b1");
    EXPECT_EQ(r.lhs_class, r.rhs_class);
    EXPECT_TRUE(r.holds);
}

TEST(SpecialAngle, SelfGlue)
{
    const SpecialAngleReport r = special_angle_equivalences(make_glue(extracted(4, 2), extracted(4, 2), 51));
    EXPECT_EQ(r.k, 0);
    EXPECT_EQ(r.rhs, "S_nu1");
    EXPECT_EQ(r.lhs_class, "cone");
    EXPECT_TRUE(r.holds);
}

TEST(SpecialAngle, VaryingAngle)
{
    EXPECT_THROW((void)special_angle_equivalences(fixtures::glue(5)), NotApplicable);
}

TEST(SpecialAngle, NonRightConstantAngle)
{
    EXPECT_THROW((void)special_angle_equivalences(fixtures::glue(4)), NotApplicable);
}

// rotation identities and the expanded S_nu2 forms on every glue fixture
TEST(GlueProperty, IdentitiesOnAllFixtures)
{
    for (int n = 1; n <= 6; ++n) {
        const GlueScene g = fixtures::glue(n);
        for (double t : g.interval().samples(201)) {
            const RotationResiduals r = rotation_identities(g, t);
            EXPECT_LE(r.kappa1, 1e-9) << n << " t=" << t;
            EXPECT_LE(r.kappa2, 1e-9) << n << " t=" << t;
            EXPECT_LE(r.kappa3, 1e-9) << n << " t=" << t;
            EXPECT_LE(r.rodrigues_nu, 1e-9) << n << " t=" << t;
            EXPECT_LE(r.rodrigues_b, 1e-9) << n << " t=" << t;
            EXPECT_LE(expanded_nu2(g, t).residual(), 1e-8) << n << " t=" << t;
            EXPECT_LE(rotated_ruling_residual(g, t), 1e-9) << n << " t=" << t;
        }
    }
}

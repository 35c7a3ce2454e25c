#include <gtest/gtest.h>

#include <random>

#include "winglock/classify.hpp"
#include "winglock/vec.hpp"

using namespace winglock;

TEST(ApplyMotion, IdentityFixesPoints) {
    Vec3 p{2, 0, 0};
    Vec3 q = apply_motion(RigidMotion::identity(), p);
    EXPECT_EQ(q.x, 2.0);
    EXPECT_EQ(q.y, 0.0);
    EXPECT_EQ(q.z, 0.0);
}

TEST(ApplyMotion, QuarterTurnAboutX) {
    RigidMotion m{Mat3::rotation_x(kPi / 2), {0, 0, 0}};
    Vec3 q = apply_motion(m, {0, 1, 0});
    EXPECT_NEAR(q.x, 0.0, 1e-15);
    EXPECT_NEAR(q.y, 0.0, 1e-15);
    EXPECT_NEAR(q.z, 1.0, 1e-15);
}

TEST(ApplyMotion, OnAxisPointIsFixed) {
    // the necklace rotation matrix shape acting on an x-axis point
    RigidMotion m{Mat3::rotation_x(2.0 * kPi / 9.0), {0, 0, 0}};
    Vec3 q = apply_motion(m, {3, 0, 0});
    EXPECT_NEAR(q.x, 3.0, 1e-15);
    EXPECT_NEAR(q.y, 0.0, 1e-15);
    EXPECT_NEAR(q.z, 0.0, 1e-15);
}

TEST(ApplyMotion, PreservesDistances) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Vec3 axis = normalized({d(rng), d(rng), d(rng) + 1e-3});
        RigidMotion m{Mat3::axis_angle(axis, d(rng)), {d(rng), d(rng), d(rng)}};
        ASSERT_LT(m.orthonormality_defect(), 1e-9);
        ASSERT_NEAR(m.rotation.det(), 1.0, 1e-9);
        Vec3 p{d(rng), d(rng), d(rng)}, q{d(rng), d(rng), d(rng)};
        double before = norm(p - q);
        double after = norm(m.apply(p) - m.apply(q));
        ASSERT_NEAR(before, after, 1e-9);
    }
}

TEST(RigidMotion, CompositionIsAssociative) {
    RigidMotion a{Mat3::rotation_x(0.3), {1, 2, 3}};
    RigidMotion b{Mat3::rotation_z(1.1), {-2, 0, 5}};
    RigidMotion c{Mat3::axis_angle(normalized({1, 1, 1}), 0.7), {0.1, -0.4, 0.2}};
    RigidMotion lhs = a.then(b).then(c);
    RigidMotion rhs = a.then(b.then(c));
    Vec3 p{0.3, -1.2, 2.5};
    EXPECT_NEAR(norm(lhs.apply(p) - rhs.apply(p)), 0.0, 1e-12);
}

TEST(Twist, VelocityField) {
    Twist t{{0, 0, 1}, {1, 0, 0}, {0, 0, 0}};
    Vec3 v = t.velocity_at({0, 2, 0});
    EXPECT_NEAR(v.x, -1.0, 1e-15);  // 1 + (z x 2y).x = 1 - 2
    EXPECT_NEAR(v.y, 0.0, 1e-15);
    EXPECT_NEAR(v.z, 0.0, 1e-15);
}

TEST(AreaCentroid, UnitSquare) {
    ConvexFacet f = make_facet({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {0, 0, 1});
    auto [area, c] = polygon_area_centroid(f);
    EXPECT_NEAR(area, 1.0, 1e-12);
    EXPECT_NEAR(c.x, 0.5, 1e-12);
    EXPECT_NEAR(c.y, 0.5, 1e-12);
}

TEST(AreaCentroid, RegularPentagonRadiusTwo) {
    std::vector<Vec3> v;
    for (int s = 0; s < 5; ++s) {
        double a = 2.0 * kPi * s / 5.0;
        v.push_back({2.0 * std::cos(a), 2.0 * std::sin(a), 0.0});
    }
    ConvexFacet f = make_facet(v, {0, 0, 1});
    auto [area, c] = polygon_area_centroid(f);
    double closed_form = 2.5 * 4.0 * std::sin(2.0 * kPi / 5.0);
    EXPECT_NEAR(area, closed_form, 1e-12);
    EXPECT_NEAR(area, 9.5106, 5e-5);
    EXPECT_NEAR(norm(c), 0.0, 1e-12);
}

TEST(AreaCentroid, RightTriangle) {
    ConvexFacet f = make_facet({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {0, 0, 1});
    auto [area, c] = polygon_area_centroid(f);
    EXPECT_NEAR(area, 0.5, 1e-15);
    EXPECT_NEAR(c.x, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(c.y, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(c.z, 0.0, 1e-15);
}

TEST(AreaCentroid, DegenerateFacetThrows) {
    EXPECT_THROW(make_facet({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, {0, 0, 1}), Error);
}

TEST(ClipCoplanar, OverlappingSquares) {
    ConvexFacet a = make_facet({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {0, 0, 1});
    ConvexFacet b = make_facet({{0.5, 0, 0}, {1.5, 0, 0}, {1.5, 1, 0}, {0.5, 1, 0}}, {0, 0, 1});
    auto r = clip_coplanar(a, b);
    ASSERT_TRUE(r.has_value());
    auto [area, c] = polygon_area_centroid(*r);
    EXPECT_NEAR(area, 0.5, 1e-12);
    EXPECT_NEAR(c.x, 0.75, 1e-12);
}

TEST(ClipCoplanar, DisjointSquares) {
    ConvexFacet a = make_facet({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {0, 0, 1});
    ConvexFacet b = make_facet({{3, 0, 0}, {4, 0, 0}, {4, 1, 0}, {3, 1, 0}}, {0, 0, 1});
    EXPECT_FALSE(clip_coplanar(a, b).has_value());
}

TEST(ClipCoplanar, PentagonWithItself) {
    std::vector<Vec3> v;
    for (int s = 0; s < 5; ++s) {
        double a = 2.0 * kPi * s / 5.0;
        v.push_back({2.0 * std::cos(a), 2.0 * std::sin(a), 1.0});
    }
    ConvexFacet f = make_facet(v, {0, 0, 1});
    auto r = clip_coplanar(f, f);
    ASSERT_TRUE(r.has_value());
    EXPECT_NEAR(polygon_area_centroid(*r).first, polygon_area_centroid(f).first, 1e-9);
}

TEST(ClipCoplanar, NotCoplanarThrows) {
    ConvexFacet a = make_facet({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {0, 0, 1});
    ConvexFacet b = make_facet({{0, 0, 1}, {1, 0, 1}, {1, 1, 2}, {0, 1, 2}}, {0, 0, 1});
    EXPECT_THROW(clip_coplanar(a, b), Error);
}

TEST(ClipCoplanar, AreaNeverExceedsInputs) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto rand_quad = [&]() {
            double cx = d(rng), cy = d(rng);
            std::vector<Vec3> v;
            for (int i = 0; i < 4; ++i) {
                double a = 2.0 * kPi * i / 4.0 + 0.2 * d(rng);
                double r = 0.5 + 0.4 * std::abs(d(rng));
                v.push_back({cx + r * std::cos(a), cy + r * std::sin(a), 0.0});
            }
            return make_facet(v, {0, 0, 1});
        };
        ConvexFacet a = rand_quad(), b = rand_quad();
        auto r = clip_coplanar(a, b);
        if (!r) continue;
        double ra = polygon_area_centroid(a).first;
        double rb = polygon_area_centroid(b).first;
        double ri = polygon_area_centroid(*r).first;
        ASSERT_LE(ri, std::min(ra, rb) + 1e-9);
    }
}

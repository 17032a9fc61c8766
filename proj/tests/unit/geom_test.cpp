#include <gtest/gtest.h>

#include <cmath>

#include "devsurf/errors.hpp"
#include "devsurf/geom.hpp"

using namespace devsurf;

TEST(Vec3, CrossIsOrthogonalToBothFactors) {
  const Vec3 a{1.5, -2, 0.25}, b{0.3, 4, -1};
  const Vec3 c = cross(a, b);
  EXPECT_NEAR(dot(a, c), 0.0, 1e-14);
  EXPECT_NEAR(dot(b, c), 0.0, 1e-14);
  EXPECT_NEAR(norm(c) * norm(c), dot(a, a) * dot(b, b) - dot(a, b) * dot(a, b), 1e-12);
}

TEST(Vec3, TripleProductIsTheDeterminant) {
  EXPECT_DOUBLE_EQ(triple_product({1, 0, 0}, {0, 1, 0}, {0, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(triple_product({0, 1, 0}, {1, 0, 0}, {0, 0, 1}), -1.0);
  EXPECT_DOUBLE_EQ(triple_product({1, 2, 3}, {2, 4, 6}, {0, 0, 1}), 0.0);
}

TEST(Vec3, NormalizedTripleProductIsScaleFree) {
  const Vec3 a{1, 0.2, 0}, b{0.1, 1, 0.3}, c{0.2, -0.1, 1};
  const double base = normalized_triple_product(a, b, c);
  EXPECT_NEAR(normalized_triple_product(1e6 * a, 1e-4 * b, 3.0 * c), base, 1e-14);
  EXPECT_EQ(normalized_triple_product({0, 0, 0}, b, c), 0.0);
  EXPECT_LE(base, 1.0);
}

TEST(Vec3, NormalizedRejectsZero) {
  EXPECT_THROW(normalized({0, 0, 0}), Error);
  EXPECT_NEAR(norm(normalized({3, 4, 12})), 1.0, 1e-15);
}

TEST(Plane, SignedDistance) {
  const Plane p({0, 0, 1}, {0, 0, 5});
  EXPECT_DOUBLE_EQ(p.normal().z, 1.0);
  EXPECT_DOUBLE_EQ(p.signed_distance({3, 4, 3}), 2.0);
  EXPECT_THROW(Plane({0, 0, 0}, {0, 0, 0}), Error);
}

TEST(LinePlane, IntersectionLiesOnBoth) {
  const Line3 l({1, 2, 3}, {0.5, -1, 2});
  const Plane p({0, 1, 0}, {1, 1, 1});
  const Vec3 x = line_plane_intersection(l, p);
  EXPECT_NEAR(p.signed_distance(x), 0.0, 1e-13);
  const Vec3 r = x - l.origin();
  EXPECT_NEAR(norm(cross(r, l.direction())), 0.0, 1e-13);
}

TEST(LinePlane, ParallelThrows) {
  const Line3 l({0, 0, 1}, {1, 1, 0});
  const Plane p({0, 0, 0}, {0, 0, 1});
  try {
    line_plane_intersection(l, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParallelLinePlane);
  }
  EXPECT_THROW(Line3({0, 0, 0}, {0, 0, 0}), Error);
}

TEST(OsculatingPlane, ContainsVelocityAndAcceleration) {
  const Vec3 v{1, 0.5, 0}, a{0, 1, 2};
  const Plane p = osculating_plane({1, 1, 1}, v, a);
  EXPECT_NEAR(dot(p.normal(), v), 0.0, 1e-14);
  EXPECT_NEAR(dot(p.normal(), a), 0.0, 1e-14);
}

TEST(OsculatingPlane, StraightMotionThrows) {
  try {
    osculating_plane({0, 0, 0}, {1, 2, 3}, {2, 4, 6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateOsculatingPlane);
  }
}

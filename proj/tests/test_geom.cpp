#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <sigcurve/geom.hpp>
#include <sigcurve/random.hpp>

#include "oracles.hpp"

using namespace sigcurve;

TEST(Point, RejectsNonFiniteCoordinates) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(Point2(nan, 0.0), SignatureError);
  EXPECT_THROW(Point3(0.0, inf, 0.0), SignatureError);
  try {
    Point2(0.0, nan);
  } catch (const SignatureError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}

TEST(Distance, Basics) {
  EXPECT_DOUBLE_EQ(distance(Point2{0, 0}, Point2{3, 4}), 5.0);
  EXPECT_EQ(distance(Point2{1.5, -2}, Point2{1.5, -2}), 0.0);
  EXPECT_NEAR(distance(Point3{1, 0, 0}, Point3{0, 1, 0}), 1.4142136, 1e-7);
  EXPECT_EQ(distance(Point3{1, 2, 3}, Point3{4, 5, 6}), distance(Point3{4, 5, 6}, Point3{1, 2, 3}));
}

TEST(HeronArea, Examples) {
  EXPECT_DOUBLE_EQ(heron_area(3, 4, 5), 6.0);
  EXPECT_EQ(heron_area(1, 2, 3), 0.0);
  EXPECT_NEAR(heron_area(2, 2, 2), 1.7320508, 1e-7);
  EXPECT_DOUBLE_EQ(heron_area(TriangleSides(3, 4, 5)), 6.0);
}

TEST(HeronArea, InconsistentSides) {
  try {
    heron_area(1, 1, 3);
    FAIL();
  } catch (const SignatureError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeDiscriminant);
  }
  EXPECT_THROW(TriangleSides(1, 1, 3), SignatureError);
  EXPECT_THROW(TriangleSides(-1, 1, 1), SignatureError);
  // Equality within rounding is a degenerate triangle, not an error.
  EXPECT_NO_THROW(TriangleSides(0.1, 0.2, 0.30000000000000004));
}

TEST(HeronArea, NeedleTriangleKeepsDigits) {
  // Isosceles needle with sides 1, 1, 1e-8: area = (c/2) sqrt(1 - c^2/4).
  // The semiperimeter form loses about half the digits here.
  const double c = 1e-8;
  EXPECT_NEAR(heron_area(1.0, 1.0, c), 0.5 * c * std::sqrt(1.0 - c * c / 4), 5e-9 * 1e-14);
}

TEST(HeronArea, MatchesCrossProductOnRandomTriangles) {
  CounterRng rng(11);
  for (int k = 0; k < 200; ++k) {
    const Point2 A{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Point2 B{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Point2 C{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const double expect = 0.5 * std::abs((B.x - A.x) * (C.y - A.y) - (B.y - A.y) * (C.x - A.x));
    EXPECT_NEAR(heron_area(distance(A, B), distance(B, C), distance(A, C)), expect,
                1e-12 * std::max(expect, 1.0));
  }
}

TEST(Parallelogram, SignedAreas) {
  const Point2 O{0, 0}, X{1, 0}, Y{0, 1};
  EXPECT_EQ(signed_parallelogram3(O, X, Y), 1.0);
  EXPECT_EQ(signed_parallelogram3(O, Y, X), -1.0);
  EXPECT_EQ(signed_parallelogram3(O, X, Point2{2, 0}), 0.0);
  EXPECT_EQ(signed_parallelogram4(X, O, Y, O), 1.0);
  EXPECT_EQ(signed_parallelogram4(X, O, Y, Y), 0.0);
  EXPECT_EQ(signed_parallelogram4(O, X, Y, O), -signed_parallelogram4(X, O, Y, O));
}

TEST(Parallelogram, UnimodularInvariance) {
  CounterRng rng(5);
  // [[2, 3], [1, 2]] has determinant 1.
  auto map = [](Point2 p) { return Point2{2 * p.x + 3 * p.y + 0.7, p.x + 2 * p.y - 1.3}; };
  for (int k = 0; k < 50; ++k) {
    const Point2 a{rng.uniform(-1, 1), rng.uniform(-1, 1)}, b{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Point2 c{rng.uniform(-1, 1), rng.uniform(-1, 1)}, d{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double v3 = signed_parallelogram3(a, b, c);
    const double v4 = signed_parallelogram4(a, b, c, d);
    EXPECT_NEAR(signed_parallelogram3(map(a), map(b), map(c)), v3, 1e-10 * std::max(std::abs(v3), 1.0));
    EXPECT_NEAR(signed_parallelogram4(map(a), map(b), map(c), map(d)), v4, 1e-10 * std::max(std::abs(v4), 1.0));
  }
}

TEST(CayleyMenger, KnownVolumes) {
  EXPECT_NEAR(cayley_menger_volume({1, 1, 1, 1, 1, 1}), 1.0 / (6.0 * std::sqrt(2.0)), 1e-12);
  // Right corner at P_i = origin; P_{i-1}, P_{i+1}, P_{i+2} on the axes.
  const Point3 pm{1, 0, 0}, p0{0, 0, 0}, pp{0, 1, 0}, pq{0, 0, 1};
  EXPECT_NEAR(cayley_menger_volume(TetraDistances::of(pm, p0, pp, pq)), 1.0 / 6.0, 1e-12);
  const Point3 flat{0.3, 0.4, 0};
  EXPECT_EQ(cayley_menger_volume(TetraDistances::of(pm, p0, pp, flat)), 0.0);
}

TEST(CayleyMenger, RejectsNonRealizable) {
  // Three unit distances from one vertex and a far-apart pair: no tetrahedron.
  try {
    cayley_menger_volume({1, 1, 1.9, 1, 1, 0.01});
    FAIL();
  } catch (const SignatureError& e) {
    EXPECT_TRUE(e.code() == ErrorCode::NotRealizable);
  }
}

TEST(TetraHeight, Examples) {
  EXPECT_NEAR(tetra_height({1, 1, 1, 1, 1, 1}), std::sqrt(2.0 / 3.0), 1e-12);
  const Point3 pm{1, 0, 0}, p0{0, 0, 0}, pp{0, 1, 0};
  // From distances alone a flat tetrahedron is only zero up to the square
  // root of the rounding in its sides.
  EXPECT_NEAR(tetra_height(TetraDistances::of(pm, p0, pp, Point3{0.2, 0.7, 0})), 0.0, 1e-9);
  for (const double h : {0.5, 2.0, 1e-3}) {
    EXPECT_NEAR(tetra_height(TetraDistances::of(pm, p0, pp, Point3{0.1, 0.2, h})), h, 1e-12);
  }
}

TEST(TetraHeight, DegenerateBase) {
  const Point3 pm{0, 0, 0}, p0{1, 0, 0}, pp{2, 0, 0}, pq{0, 1, 1};
  try {
    tetra_height(TetraDistances::of(pm, p0, pp, pq));
    FAIL();
  } catch (const SignatureError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateBase);
  }
}

TEST(TetraHeight, MatchesPointPlaneDistance) {
  CounterRng rng(3);
  for (int k = 0; k < 300; ++k) {
    auto pt = [&] { return Point3{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}; };
    const Point3 a = pt(), b = pt(), c = pt(), d = pt();
    const double expect = oracle::point_plane_distance(a, b, c, d);
    EXPECT_NEAR(tetra_height(TetraDistances::of(a, b, c, d)), expect,
                1e-10 * std::max(expect, 1.0));
  }
}

TEST(TetraHeight, AgreesWithVolumeRouteOnWellShapedTetrahedra) {
  CounterRng rng(4);
  for (int k = 0; k < 100; ++k) {
    auto pt = [&] { return Point3{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}; };
    const Point3 a = pt(), b = pt(), c = pt(), d = pt();
    const auto t = TetraDistances::of(a, b, c, d);
    const double base = heron_area(t.a, t.b, t.c);
    if (base < 0.1) continue;
    const double via_volume = 3.0 * cayley_menger_volume(t) / base;
    EXPECT_NEAR(tetra_height(t), via_volume, 1e-8 * std::max(via_volume, 1.0));
  }
}

TEST(TetraHeight, FineStencilOnSmoothCurve) {
  // Four samples h apart on the helix (cos t, sin t, t): H ~ h^3 / (2 sqrt 2).
  // Distances alone fix H only to ~eps (d/H)^2, so the tolerance is loose.
  const double h = 1e-2;
  Point3 p[4];
  for (int k = 0; k < 4; ++k) {
    const double t = 0.3 + k * h;
    p[k] = Point3{std::cos(t), std::sin(t), t};
  }
  const double expect = oracle::point_plane_distance(p[0], p[1], p[2], p[3]);
  EXPECT_NEAR(tetra_height(TetraDistances::of(p[0], p[1], p[2], p[3])), expect, 1e-5 * expect);
}

TEST(Geom, RigidMotionInvarianceEndToEnd) {
  CounterRng rng(9);
  const double th = 0.83;
  auto move = [&](Point3 p) {
    return Point3{std::cos(th) * p.x - std::sin(th) * p.y + 3.1,
                  std::sin(th) * p.x + std::cos(th) * p.y - 0.4, p.z + 2.2};
  };
  for (int k = 0; k < 50; ++k) {
    auto pt = [&] { return Point3{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}; };
    const Point3 a = pt(), b = pt(), c = pt(), d = pt();
    const auto t0 = TetraDistances::of(a, b, c, d);
    const auto t1 = TetraDistances::of(move(a), move(b), move(c), move(d));
    const double h0 = tetra_height(t0), h1 = tetra_height(t1);
    EXPECT_NEAR(h1, h0, 1e-12 * std::max(h0, 1.0));
    const double v0 = cayley_menger_volume(t0), v1 = cayley_menger_volume(t1);
    EXPECT_NEAR(v1, v0, 1e-12 * std::max(v0, 1.0));
    EXPECT_NEAR(heron_area(t1.a, t1.b, t1.c), heron_area(t0.a, t0.b, t0.c), 1e-12 * std::max(heron_area(t0.a, t0.b, t0.c), 1.0));
  }
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "perimax/search_harness.hpp"
#include "perimax/simple_polygon.hpp"
#include "test_util.hpp"

using namespace perimax;
using namespace perimax::testing;

namespace {

ClosedPolygon poly(std::initializer_list<Point> pts) { return ClosedPolygon(std::vector<Point>(pts)); }

TEST(Perimeter, Examples) {
  EXPECT_NEAR(perimeter(poly({E(0, 0), E(1, 0), E(1, 1), E(0, 1)})), 4.0, 1e-15);
  EXPECT_NEAR(perimeter(poly({E(0, 0), E(0, 1), E(0, 0.5)})), 2.0, 1e-15);
  EXPECT_NEAR(perimeter(regular_polygon(5)), 10.0 * std::sin(std::numbers::pi / 5), 1e-14);
  EXPECT_NEAR(perimeter(regular_polygon(5)), 5.8778525229247312, 1e-14);
}

TEST(Perimeter, InvariantUnderRotationAndReversal) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> v;
    for (int i = 0; i < 7; ++i) v.push_back(random_poincare(rng, 0.9));
    const double base = perimeter(ClosedPolygon(v));
    std::rotate(v.begin(), v.begin() + 3, v.end());
    EXPECT_NEAR(perimeter(ClosedPolygon(v)), base, 1e-12);
    std::reverse(v.begin(), v.end());
    EXPECT_NEAR(perimeter(ClosedPolygon(v)), base, 1e-12);
  }
}

TEST(Construction, NeedsThreeVerticesOneMetric) {
  EXPECT_THROW(poly({E(0, 0), E(1, 0)}), GeometryError);
  EXPECT_THROW(poly({E(0, 0), E(1, 0), H(0, 0.5)}), GeometryError);
}

TEST(IsSimple, Examples) {
  EXPECT_TRUE(is_simple(poly({E(0, 0), E(1, 0), E(1, 1), E(0, 1)})));
  const auto bowtie = is_simple(poly({E(0, 0), E(1, 1), E(1, 0), E(0, 1)}));
  ASSERT_FALSE(bowtie);
  EXPECT_EQ(bowtie.witness->first, 0u);
  EXPECT_EQ(bowtie.witness->second, 2u);
  EXPECT_FALSE(is_simple(poly({E(0, 0), E(1, 0), E(0, 0), E(0, 1)})));
}

TEST(IsSimple, TouchingAtNonVertexIsNotSimple) {
  // Vertex 3 lies on edge [v0, v1].
  EXPECT_FALSE(is_simple(poly({E(0, 0), E(2, 0), E(2, 2), E(1, 0), E(0, 2)})));
  // Adjacent edges folding back along a line.
  EXPECT_FALSE(is_simple(poly({E(0, 0), E(2, 0), E(1, 0), E(1, 1)})));
  // Degenerate collinear triangle.
  EXPECT_FALSE(is_simple(poly({E(0, 0), E(0, 1), E(0, 0.5)})));
}

TEST(IsSimple, InvariantUnderRelabeling) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point> v;
    for (int i = 0; i < 6; ++i) v.push_back(random_euclidean(rng, 1));
    const bool s = static_cast<bool>(is_simple(ClosedPolygon(v)));
    std::rotate(v.begin(), v.begin() + 2, v.end());
    EXPECT_EQ(static_cast<bool>(is_simple(ClosedPolygon(v))), s);
  }
}

TEST(IsSimple, HyperbolicUsesGeodesicEdges) {
  // Chart-straight in Poincare coordinates is not geodesic: test in Klein.
  const Point a = Point::klein(Vec2(-0.6, 0)), b = Point::klein(Vec2(0.6, 0));
  const Point c = Point::klein(Vec2(0, 0.01)), d = Point::klein(Vec2(0, -0.5));
  EXPECT_TRUE(is_simple(ClosedPolygon({a, c, b, d})));
  EXPECT_FALSE(is_simple(ClosedPolygon({a, b, c, d})));
}

TEST(ContainedIn, Examples) {
  EXPECT_TRUE(contained_in(regular_polygon(5), unit_disk()));
  EXPECT_FALSE(contained_in(poly({E(0, 0), E(1 + 1e-6, 0), E(0, 0.5)}), unit_disk()));
  EXPECT_TRUE(contained_in(regular_polygon(4), unit_disk()));
  EXPECT_THROW(contained_in(regular_polygon(4), hyperbolic_disk()), GeometryError);
}

TEST(Uncross, BowtieBecomesSquare) {
  const ClosedPolygon bowtie = poly({E(0, 0), E(1, 1), E(1, 0), E(0, 1)});
  EXPECT_NEAR(perimeter(bowtie), 2.0 + 2.0 * std::sqrt(2.0), 1e-14);
  const ClosedPolygon fixed = uncross(bowtie, 1);
  EXPECT_TRUE(is_simple(fixed));
  EXPECT_NEAR(perimeter(fixed), 4.0, 1e-14);
  const std::vector<Vec2> expect{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR((fixed[i].coords() - expect[i]).norm(), 0.0, 1e-15);
}

TEST(Uncross, SimpleInputUnchanged) {
  const ClosedPolygon sq = poly({E(0, 0), E(1, 0), E(1, 1), E(0, 1)});
  const ClosedPolygon out = uncross(sq, 10);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(out[i].coords(), sq[i].coords());
}

TEST(Uncross, BudgetExhaustedCarriesPartial) {
  const ClosedPolygon star = regular_polygon(7);
  std::vector<Point> v;
  for (int k = 0; k < 7; ++k) v.push_back(star[3 * k]);  // heptagram
  try {
    uncross(ClosedPolygon(v), 0);
    FAIL() << "expected UncrossError";
  } catch (const UncrossError& e) {
    EXPECT_EQ(e.partial().size(), 7u);
  }
}

TEST(Uncross, RandomNineGonsInDisk) {
  std::mt19937_64 rng(99);
  const ConvexBody disk = unit_disk();
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Point> v;
    for (int i = 0; i < 9; ++i) v.push_back(disk.sample(rng));
    const ClosedPolygon in(v);
    const ClosedPolygon out = uncross(in, 10000);
    EXPECT_TRUE(is_simple(out));
    EXPECT_LE(perimeter(out), perimeter(in) + 1e-12);
  }
}

TEST(Uncross, HyperbolicRandom) {
  std::mt19937_64 rng(98);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> v;
    for (int i = 0; i < 8; ++i) v.push_back(random_poincare(rng, 0.9));
    EXPECT_TRUE(is_simple(uncross(ClosedPolygon(v), 10000)));
  }
}

}  // namespace

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "perimax/certificate.hpp"
#include "perimax/search_harness.hpp"
#include "test_util.hpp"

using namespace perimax;
using namespace perimax::testing;

namespace {

bool same_polygon(const ClosedPolygon& a, const ClosedPolygon& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].coords() != b[i].coords()) return false;
  }
  return true;
}

TEST(RandomPolygon, Deterministic) {
  for (const ConvexBody& body : {unit_disk(), unit_square(), hyperbolic_disk(1.0)}) {
    EXPECT_TRUE(same_polygon(random_simple_polygon(body, 7, 11), random_simple_polygon(body, 7, 11)));
    EXPECT_FALSE(same_polygon(random_simple_polygon(body, 7, 11), random_simple_polygon(body, 7, 12)));
  }
}

TEST(RandomPolygon, SimpleAndContained) {
  for (const ConvexBody& body : {unit_disk(), unit_square(), hyperbolic_disk(1.0)}) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const ClosedPolygon p = random_simple_polygon(body, 9, seed);
      ASSERT_EQ(p.size(), 9u);
      ASSERT_TRUE(is_simple(p).simple) << "seed " << seed;
      ASSERT_TRUE(contained_in(p, body)) << "seed " << seed;
    }
  }
}

TEST(LocalSearch, ZeroStepsIsIdentity) {
  const ClosedPolygon p = random_simple_polygon(unit_disk(), 5, 3);
  EXPECT_TRUE(same_polygon(local_search_max_perimeter(p, unit_disk(), 0, 1.0, 9), p));
}

TEST(LocalSearch, NeverShortensAndStaysValid) {
  for (const ConvexBody& body : {unit_disk(), unit_square(), hyperbolic_disk(1.0)}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ClosedPolygon p = random_simple_polygon(body, 7, seed);
      long steps = 0;
      double last = perimeter(p);
      for (long chunk : {10, 100, 1000}) {
        steps += chunk;
        const ClosedPolygon q = local_search_max_perimeter(p, body, steps, 1.0, seed);
        EXPECT_TRUE(is_simple(q).simple);
        EXPECT_TRUE(contained_in(q, body));
        EXPECT_GE(perimeter(q), perimeter(p));
        last = perimeter(q);
      }
      EXPECT_LE(last, compute_bound(body, 7).value + 1e-9);
    }
  }
}

TEST(LocalSearch, QuadrilateralInDiskApproachesTwiceDiameter) {
  double best = 0.0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const ClosedPolygon p = random_simple_polygon(unit_disk(), 4, seed);
    best = std::max(best, perimeter(local_search_max_perimeter(p, unit_disk(), 100000, 2.0, seed)));
  }
  EXPECT_GE(best, 7.9);
  EXPECT_LT(best, 8.0);
}

TEST(NearExtremalOdd, ApproachesBound) {
  for (const ConvexBody& body : {unit_disk(), unit_square(), hyperbolic_disk(1.0)}) {
    for (int n : {5, 7}) {
      const double bound = compute_bound(body, n).value;
      const ClosedPolygon p = near_extremal_odd(body, n, 1e-4);
      ASSERT_EQ(p.size(), static_cast<std::size_t>(n));
      EXPECT_TRUE(is_simple(p).simple);
      EXPECT_TRUE(contained_in(p, body));
      EXPECT_LE(perimeter(p), bound + 1e-9);
      EXPECT_GE(perimeter(p), bound - 1e-2);
      const double coarse = bound - perimeter(near_extremal_odd(body, n, 2e-4));
      EXPECT_LE(bound - perimeter(p), coarse + 1e-12);
    }
  }
}

TEST(NearExtremalOdd, TriangleIsTheOptimum) {
  const ClosedPolygon t = near_extremal_odd(unit_disk(), 3, 1e-3);
  EXPECT_NEAR(perimeter(t), 3.0 * std::sqrt(3.0), 1e-9);
}

TEST(NearExtremalOdd, RejectsBadInput) {
  EXPECT_THROW(near_extremal_odd(unit_disk(), 4, 1e-3), std::invalid_argument);
  EXPECT_ANY_THROW(near_extremal_odd(unit_disk(), 5, 1.0));
}

TEST(NearExtremalEven, ApproachesDiameterMultiple) {
  for (const ConvexBody& body : {unit_disk(), unit_square()}) {
    for (int n : {4, 6}) {
      const double target = n * body.diameter();
      const ClosedPolygon p = near_extremal_even(body, n, 1e-4);
      EXPECT_TRUE(is_simple(p).simple);
      EXPECT_TRUE(contained_in(p, body));
      EXPECT_LE(perimeter(p), target + 1e-9);
      EXPECT_GE(perimeter(p), target - 1e-2);
    }
  }
}

TEST(NearExtremalEven, SmallerEpsIsLonger) {
  const double a = perimeter(near_extremal_even(unit_disk(), 4, 1e-2));
  const double b = perimeter(near_extremal_even(unit_disk(), 4, 1e-3));
  const double c = perimeter(near_extremal_even(unit_disk(), 4, 1e-4));
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_NEAR(c, 7.9986000100017502, 1e-12);
}

TEST(Campaign, ZeroTrialsIsVacuous) {
  const SearchReport r = verify_no_counterexample(unit_disk(), 5, 0, 1000, 1);
  EXPECT_EQ(r.trials, 0);
  EXPECT_TRUE(r.restarts.empty());
  EXPECT_FALSE(r.best_polygon);
  EXPECT_EQ(r.best_restart, -1);
}

TEST(Campaign, ThreadCountDoesNotChangeReport) {
  for (const ConvexBody& body : {unit_square(), hyperbolic_disk(1.0)}) {
    const SearchReport serial = verify_no_counterexample(body, 5, 6, 2000, 99, 1);
    const SearchReport parallel = verify_no_counterexample(body, 5, 6, 2000, 99, 4);
    ASSERT_EQ(serial.restarts.size(), 6u);
    ASSERT_EQ(parallel.restarts.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_EQ(serial.restarts[i].seed, parallel.restarts[i].seed);
      EXPECT_EQ(serial.restarts[i].best_perimeter, parallel.restarts[i].best_perimeter);
      EXPECT_EQ(serial.restarts[i].certificate_slack, parallel.restarts[i].certificate_slack);
    }
    EXPECT_EQ(serial.best_restart, parallel.best_restart);
    EXPECT_EQ(serial.best_perimeter, parallel.best_perimeter);
    EXPECT_EQ(serial.certified, 6);
    EXPECT_LE(serial.max_violation, 1e-9);
    EXPECT_GE(serial.min_certificate_slack, -1e-9);
  }
}

TEST(Campaign, ProgressLines) {
  std::ostringstream progress;
  verify_no_counterexample(unit_disk(), 5, 3, 100, 5, 1, &progress);
  const std::string s = progress.str();
  EXPECT_NE(s.find("restart=0 best="), std::string::npos);
  EXPECT_NE(s.find("restart=2 best="), std::string::npos);
}

TEST(Campaign, EvenNRejected) { EXPECT_ANY_THROW(verify_no_counterexample(unit_disk(), 4, 1, 10, 1)); }

}  // namespace

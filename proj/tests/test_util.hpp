#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "perimax/convex_body.hpp"
#include "perimax/metric_plane.hpp"
#include "perimax/simple_polygon.hpp"

namespace perimax::testing {

inline Point E(double x, double y) { return Point::euclidean(x, y); }
inline Point H(double u, double v) { return Point::poincare(u, v); }
inline Point E(const Vec2& v) { return Point::euclidean(v); }
inline Point H(const Vec2& v) { return Point::poincare(v); }

inline ConvexBody unit_disk() { return ConvexBody::disk(E(0, 0), 1.0); }
inline ConvexBody unit_square() { return ConvexBody::polygon({E(0, 0), E(1, 0), E(1, 1), E(0, 1)}); }
inline ConvexBody hyperbolic_disk(double r = 1.0) { return ConvexBody::disk(H(0, 0), r); }

inline ClosedPolygon regular_polygon(int n, double radius = 1.0) {
  std::vector<Point> v;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    v.push_back(E(radius * std::cos(t), radius * std::sin(t)));
  }
  return ClosedPolygon(std::move(v));
}

/// Uniform point of the Poincare disk of Euclidean radius `r`.
inline Point random_poincare(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  for (;;) {
    const double x = u(rng), y = u(rng);
    if (x * x + y * y < r * r) return H(x, y);
  }
}

inline Point random_euclidean(std::mt19937_64& rng, double half) {
  std::uniform_real_distribution<double> u(-half, half);
  return E(u(rng), u(rng));
}

}  // namespace perimax::testing

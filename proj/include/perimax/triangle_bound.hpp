#pragma once

#include <array>
#include <optional>
#include <string>

#include "perimax/convex_body.hpp"
#include "perimax/metric_plane.hpp"

namespace perimax {

/// Side lengths sorted so that alpha >= beta >= gamma.
struct SortedSides {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

SortedSides sort_sides(double a, double b, double c);

/// Throws std::invalid_argument("n must be odd and >= 3") otherwise.
void require_odd_n(int n);

/// (n - 2) * alpha + beta + gamma for odd n >= 3.
double triangle_score(int n, double a, double b, double c);
double triangle_score(int n, const SortedSides& s);

/// Three points with their side lengths. `params` holds the boundary
/// parameters when the triangle came from the optimizer.
struct InscribedTriangle {
  std::array<Point, 3> vertices;
  std::array<double, 3> params{};
  /// Lengths of [v0,v1], [v1,v2], [v2,v0].
  std::array<double, 3> edge_lengths{};
  SortedSides sides;
};

InscribedTriangle make_triangle(const std::array<Point, 3>& vertices);

struct BoundDiagnostics {
  std::string method;
  int grid = 0;
  int refinement_sweeps = 0;
  /// Largest parameter move in the final sweep.
  double parameter_tolerance = 0.0;
};

struct BoundResult {
  int n = 3;
  InscribedTriangle triangle;
  double value = 0.0;
  BoundDiagnostics diagnostics;
};

inline constexpr int kDefaultBodyGrid = 96;
inline constexpr int kDefaultDiskGrid = 512;
inline constexpr int kDefaultRefineIters = 400;

/// Maximizes the score over triangles inscribed in `body`: exhaustive search
/// over grid^3 ordered boundary parameter triples, then cyclic golden-section
/// refinement. Ties on the grid go to the lexicographically smallest triple;
/// the result does not depend on `threads`.
BoundResult optimize_bound(const ConvexBody& body, int n, int grid = kDefaultBodyGrid,
                           int refine_iters = kDefaultRefineIters, unsigned threads = 1);

/// Disk specialization over central angles (t1 + t2 + t3 = 2 pi), for a disk
/// of intrinsic radius r centered at the chart origin.
BoundResult disk_bound_1d(Metric metric, double radius, int n, int grid = kDefaultDiskGrid,
                          int refine_iters = kDefaultRefineIters);

/// disk_bound_1d carried to the body's center for disks, optimize_bound
/// otherwise. `grid` overrides the default resolution of either method.
BoundResult compute_bound(const ConvexBody& body, int n, std::optional<int> grid = std::nullopt);

/// Moves each vertex not on the boundary outward along a direction that makes
/// a non-obtuse angle with both "away from neighbor" directions, so no side
/// gets shorter. Throws when a vertex is outside the body.
InscribedTriangle inscribe_push(const ConvexBody& body, const std::array<Point, 3>& triangle);

}  // namespace perimax

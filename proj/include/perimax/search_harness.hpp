#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "perimax/convex_body.hpp"
#include "perimax/simple_polygon.hpp"
#include "perimax/triangle_bound.hpp"

namespace perimax {

/// n points sampled in the body, shuffled, then uncrossed; up to 50 rounds.
/// Deterministic for a fixed seed.
ClosedPolygon random_simple_polygon(const ConvexBody& body, int n, std::uint64_t seed);

/// Hill climbing on the perimeter. Each step displaces one random vertex by
/// at most `step_scale` (linear chart), clamps it into the body along the
/// displacement ray, and keeps the move only if the polygon stays simple and
/// gets longer. The scale halves after every steps/10 rejections.
ClosedPolygon local_search_max_perimeter(const ClosedPolygon& start, const ConvexBody& body, long steps,
                                         double step_scale, std::uint64_t seed);

/// Zigzag with an edge of multiplicity n - 2 along the longest side of the
/// optimal triangle: z, x0, y0, x1, y1, ... where x_k, y_k sit (k+1)*eps inside
/// the triangle along the rays toward its centroid.
ClosedPolygon near_extremal_odd(const ConvexBody& body, int n, double eps);
ClosedPolygon near_extremal_odd(const ConvexBody& body, int n, double eps, const BoundResult& bound);

/// Alternates n/2 points near each end of a diameter. The points near the
/// first end sit on the diameter at depths eps, 2 eps, ...; those near the
/// other end fan out across it so the polygon closes without crossings.
ClosedPolygon near_extremal_even(const ConvexBody& body, int n, double eps);

struct RestartRecord {
  int index = 0;
  std::uint64_t seed = 0;
  double start_perimeter = 0.0;
  double best_perimeter = 0.0;
  double certificate_bound = 0.0;
  double certificate_slack = 0.0;
};

struct SearchReport {
  int n = 0;
  double bound = 0.0;
  std::string bound_method;
  int trials = 0;
  long steps = 0;
  std::uint64_t seed = 0;
  double best_perimeter = 0.0;
  int best_restart = -1;
  std::optional<ClosedPolygon> best_polygon;
  /// best_perimeter - bound; must stay <= 0 up to tolerance.
  double max_violation = 0.0;
  double min_certificate_slack = 0.0;
  int certified = 0;
  std::vector<RestartRecord> restarts;
};

class CounterexampleError : public std::runtime_error {
 public:
  CounterexampleError(const std::string& what, ClosedPolygon polygon)
      : std::runtime_error(what), polygon_(std::move(polygon)) {}
  const ClosedPolygon& polygon() const { return polygon_; }

 private:
  ClosedPolygon polygon_;
};

/// Runs `trials` independent restarts (seed + i) of random generation plus
/// hill climbing, certifies every final polygon, and checks the perimeter
/// against the bound. Restarts run on up to `threads` threads; the merged
/// report does not depend on the thread count. Progress lines
/// "restart=i best=<value>" go to `progress` when given.
SearchReport verify_no_counterexample(const ConvexBody& body, int n, int trials, long steps,
                                      std::uint64_t seed, unsigned threads = 1,
                                      std::ostream* progress = nullptr);

/// Thread cap from PERIMAX_THREADS (1 when unset or invalid).
unsigned threads_from_env();

}  // namespace perimax

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "perimax/convex_body.hpp"
#include "perimax/metric_plane.hpp"

namespace perimax {

/// Cyclic vertex list a_0 .. a_{n-1}; edge i is [a_i, a_{i+1 mod n}].
/// Simplicity is a checked predicate, not a construction invariant.
class ClosedPolygon {
 public:
  explicit ClosedPolygon(std::vector<Point> vertices);

  Metric metric() const { return vertices_.front().metric(); }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& operator[](std::size_t i) const { return vertices_[i % vertices_.size()]; }
  Segment edge(std::size_t i) const { return {(*this)[i], (*this)[i + 1]}; }

 private:
  std::vector<Point> vertices_;
};

struct SimplicityReport {
  bool simple = true;
  /// Offending edge indices (i < j) when not simple.
  std::optional<std::pair<std::size_t, std::size_t>> witness;

  explicit operator bool() const { return simple; }
};

double perimeter(const ClosedPolygon& p);

/// Each vertex on exactly two edges, every other point on at most one edge.
/// Coincident vertices a_i == a_j are reported as the edge pair (i, j).
SimplicityReport is_simple(const ClosedPolygon& p);

/// Whether edges i and j (as indices of `p`) violate simplicity together.
bool edges_conflict(const ClosedPolygon& p, std::size_t i, std::size_t j);

bool contained_in(const ClosedPolygon& p, const ConvexBody& body);

class UncrossError : public std::runtime_error {
 public:
  UncrossError(const std::string& what, ClosedPolygon partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ClosedPolygon& partial() const { return partial_; }

 private:
  ClosedPolygon partial_;
};

/// Repeated 2-opt: reverse the chain between two crossing edges. Each move
/// shortens the linear-chart perimeter, so at most `max_moves` moves are made.
ClosedPolygon uncross(const ClosedPolygon& p, int max_moves);

}  // namespace perimax

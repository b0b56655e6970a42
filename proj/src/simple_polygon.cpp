#include "perimax/simple_polygon.hpp"

#include <algorithm>

#include "perimax/tolerance.hpp"

namespace perimax {

namespace {

bool adjacent(std::size_t i, std::size_t j, std::size_t n) {
  return (i + 1) % n == j || (j + 1) % n == i;
}

// Reverses the cyclic run v[from], v[from+1], ..., v[to] (indices mod n).
void reverse_cyclic(std::vector<Point>& v, std::size_t from, std::size_t to) {
  const std::size_t n = v.size();
  std::size_t len = (to + n - from) % n + 1;
  for (std::size_t k = 0; k < len / 2; ++k) {
    std::swap(v[(from + k) % n], v[(to + n - k) % n]);
  }
}

}  // namespace

ClosedPolygon::ClosedPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) throw GeometryError("a polygon needs at least 3 vertices");
  for (const auto& v : vertices_) require_same_metric(vertices_.front(), v);
}

double perimeter(const ClosedPolygon& p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += distance(p[i], p[i + 1]);
  return sum;
}

bool edges_conflict(const ClosedPolygon& p, std::size_t i, std::size_t j) {
  const std::size_t n = p.size();
  i %= n;
  j %= n;
  if (i == j) return false;
  const SegmentIntersection hit = segment_intersection(p.edge(i), p.edge(j));
  if (adjacent(i, j, n)) {
    // Adjacent edges always share a vertex; anything beyond it is a fold.
    return hit.kind == SegmentIntersection::Kind::Overlap;
  }
  return hit.kind != SegmentIntersection::Kind::Disjoint;
}

SimplicityReport is_simple(const ClosedPolygon& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(p[i], p[j]) <= tol::kPredicate) return {false, std::pair{i, j}};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (edges_conflict(p, i, j)) return {false, std::pair{i, j}};
    }
  }
  return {};
}

bool contained_in(const ClosedPolygon& p, const ConvexBody& body) {
  if (p.metric() != body.metric()) throw GeometryError("metric mismatch");
  return std::all_of(p.vertices().begin(), p.vertices().end(),
                     [&](const Point& v) { return body.contains(v); });
}

ClosedPolygon uncross(const ClosedPolygon& p, int max_moves) {
  const std::size_t n = p.size();
  std::vector<Point> v = p.vertices();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(v[i], v[j]) <= tol::kPredicate) {
        throw UncrossError("uncross requires pairwise distinct vertices", p);
      }
    }
  }
  for (int move = 0;; ++move) {
    ClosedPolygon current(v);
    const SimplicityReport report = is_simple(current);
    if (report.simple) return current;
    if (move >= max_moves) throw UncrossError("uncross: move budget exhausted", current);
    auto [i, j] = *report.witness;
    if (adjacent(i, j, n)) {
      // A fold between consecutive edges: 2-opt against the next edge.
      const std::size_t first = (j == (i + 1) % n) ? i : j;
      reverse_cyclic(v, (first + 1) % n, (first + 2) % n);
    } else {
      reverse_cyclic(v, (i + 1) % n, j);
    }
  }
}

}  // namespace perimax

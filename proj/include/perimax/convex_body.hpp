#pragma once

#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "perimax/metric_plane.hpp"

namespace perimax {

struct Disk {
  Point center;
  double radius;  // intrinsic (metric) radius
};

/// Counterclockwise vertices in strictly convex position. In H2 the edges are
/// geodesic segments, so convexity is checked in the Klein chart.
struct ConvexPolygon {
  std::vector<Point> vertices;
};

class ConvexBody {
 public:
  /// Validates positivity of the radius.
  static ConvexBody disk(Point center, double radius);
  /// Validates vertex count, shared metric and strict convexity (CCW).
  static ConvexBody polygon(std::vector<Point> vertices);

  Metric metric() const { return metric_; }
  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
  const Disk& as_disk() const { return std::get<Disk>(shape_); }
  const ConvexPolygon& as_polygon() const { return std::get<ConvexPolygon>(shape_); }

  /// Disk center, or the vertex centroid taken in the linear chart.
  Point reference_point() const;

  /// Closed containment.
  bool contains(const Point& p) const;
  /// Contained and within `tolerance` of the boundary.
  bool on_boundary(const Point& p, double tolerance) const;

  /// Boundary parametrized by t in [0,1): central angle for disks,
  /// perimeter-proportional from vertex 0 for polygons.
  Point boundary_point(double t) const;
  /// Inverse of boundary_point for points on the boundary.
  double boundary_parameter(const Point& p) const;

  /// Boundary point where the ray from `origin` through `anchor` leaves the
  /// body. Throws "origin outside body" when origin is not contained.
  Point ray_exit(const Point& origin, const Point& anchor) const;

  double diameter() const;
  /// A pair of points realizing the diameter (first found for polygons).
  std::pair<Point, Point> diameter_pair() const;

  /// Axis-aligned box in the linear chart enclosing the body.
  std::pair<Vec2, Vec2> linear_bounds() const;
  /// Rejection sample, uniform with respect to linear-chart area.
  Point sample(std::mt19937_64& rng) const;

 private:
  ConvexBody(Metric m, std::variant<Disk, ConvexPolygon> shape);

  Metric metric_;
  std::variant<Disk, ConvexPolygon> shape_;
  // Polygon edge lengths and cumulative perimeter fractions.
  std::vector<double> edge_lengths_;
  double perimeter_ = 0.0;
};

}  // namespace perimax

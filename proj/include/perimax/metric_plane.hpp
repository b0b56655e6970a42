#pragma once

// Geometric primitives shared by the Euclidean plane and the hyperbolic plane.
//
// Hyperbolic points are stored on the upper sheet of the hyperboloid
// <x,x> = x0^2 - x1^2 - x2^2 = 1. The Poincare disk is the interchange chart;
// the Klein disk is the "linear chart" in which geodesics are straight chords,
// so every incidence/convexity predicate is decided there with the Euclidean
// routine. For the Euclidean plane all three charts are the identity.

#include <Eigen/Core>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace perimax {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

enum class Metric { Euclidean, Hyperbolic };

std::string_view to_string(Metric m);
Metric metric_from_string(std::string_view name);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lorentzian pairing x0*y0 - x1*y1 - x2*y2.
inline double minkowski(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2];
}

class Point {
 public:
  static Point euclidean(double x, double y);
  static Point euclidean(const Vec2& v) { return euclidean(v.x(), v.y()); }
  /// Throws GeometryError unless u^2 + v^2 < 1.
  static Point poincare(double u, double v);
  static Point poincare(const Vec2& v) { return poincare(v.x(), v.y()); }
  static Point klein(const Vec2& k);
  /// Rescales onto the hyperboloid; the input must be future timelike.
  static Point hyperboloid(const Vec3& x);

  /// Interface coordinates: Cartesian for E2, Poincare disk for H2.
  static Point from_coords(Metric m, const Vec2& c);
  /// Linear chart: Cartesian for E2, Klein disk for H2.
  static Point from_linear(Metric m, const Vec2& c);

  Metric metric() const { return metric_; }
  Vec2 coords() const;
  Vec2 linear() const;
  /// Hyperboloid vector for H2; homogeneous (1, x, y) for E2.
  const Vec3& lift() const { return lift_; }

 private:
  Point(Metric m, const Vec3& lift) : metric_(m), lift_(lift) {}

  Metric metric_;
  Vec3 lift_;
};

void require_same_metric(const Point& a, const Point& b);

/// Straight line L(x,y) through two distinct anchors.
class Geodesic {
 public:
  Geodesic(Point a, Point b);

  Metric metric() const { return a_.metric(); }
  const Point& anchor_a() const { return a_; }
  const Point& anchor_b() const { return b_; }

  // Orthonormal frame: origin on the line (= anchor_a), unit tangent along
  // it pointing toward anchor_b, and the unit normal to its left. E2 frames
  // use homogeneous points (1, x, y) and direction vectors (0, dx, dy).
  const Vec3& origin() const { return origin_; }
  const Vec3& tangent() const { return tangent_; }
  const Vec3& normal() const { return normal_; }

 private:
  Point a_;
  Point b_;
  Vec3 origin_;
  Vec3 tangent_;
  Vec3 normal_;
};

struct Segment {
  Point from;
  Point to;
};

/// Closed ray from `origin`. `Toward` runs through `anchor`; `Away` is
/// R_origin(origin, anchor), the ray that does not contain the anchor.
struct Ray {
  enum class Sense { Toward, Away };
  Point origin;
  Point anchor;
  Sense sense = Sense::Toward;
};

/// Curve of points at constant signed distance from a reference line.
struct Hypercycle {
  Geodesic reference;
  double signed_offset = 0.0;
};

double distance(const Point& p, const Point& q);

/// Inner product of tangent vectors (Euclidean dot, or minus the Lorentz form).
double tangent_dot(Metric m, const Vec3& u, const Vec3& v);
/// Unit tangent at `from` pointing along the geodesic toward `to`.
Vec3 unit_tangent_toward(const Point& from, const Point& to);
/// Point reached after arc length `s` along the unit tangent `dir` at `base`.
Point exp_map(const Point& base, const Vec3& dir, double s);
/// Point at arc length `s` from `from` along the geodesic through `toward`.
Point point_along(const Point& from, const Point& toward, double s);

/// Signed arc-length coordinate of the foot of `p` on `line`, measured from
/// the line's origin in the direction of its tangent.
double line_coordinate(const Point& p, const Geodesic& line);
Point line_point(const Geodesic& line, double u);
/// Signed distance to `line`; positive on the side of the frame normal.
double signed_distance(const Point& p, const Geodesic& line);
Point orthogonal_project(const Point& p, const Geodesic& line);

struct SegmentIntersection {
  enum class Kind { Disjoint, Point, Overlap };
  Kind kind = Kind::Disjoint;
  std::optional<Point> point;    // Kind::Point
  std::optional<Segment> overlap;  // Kind::Overlap
};

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2);
bool segments_intersect(const Segment& s1, const Segment& s2);
bool ray_segment_intersects(const Ray& r, const Segment& s);

/// Interior angle at v of the geodesic triangle (v, p, q), in [0, pi].
double angle_at(const Point& v, const Point& p, const Point& q);

enum class BisectorSide { NearerP, NearerQ, Equidistant };
BisectorSide bisector_separates(const Point& x, const Point& p, const Point& q);

/// Closed geodesic convex hull membership; generators may repeat.
bool in_convex_hull(const Point& x, std::span<const Point> generators);

/// Hypercycle meeting `base` orthogonally and passing through `p` and `a`.
/// The reference line is the perpendicular to `base` from which p and a are
/// equidistant. A single branch (same signed distance) is preferred; when no
/// perpendicular puts both on one branch, p and a lie on mirror branches and
/// the returned offset is that of p. Mirror images of each other across
/// `base` admit no unique answer and throw "infeasible hypercycle".
Hypercycle hypercycle_orthogonal_through(const Geodesic& base, const Point& p, const Point& a);
/// Hypercycle with the given reference line through `c`.
Hypercycle hypercycle_through(const Geodesic& reference, const Point& c);
/// Point of `h` whose foot on the reference line has coordinate `u`.
Point hypercycle_point(const Hypercycle& h, double u);
bool on_hypercycle(const Hypercycle& h, const Point& x, double tolerance);
/// Moving along `h` away from the projection of x never brings it closer to x.
bool hypercycle_distance_monotone_check(const Point& x, const Hypercycle& h, const Point& y1,
                                        const Point& y2);

/// Hyperbolic isometry or Euclidean similarity acting on points.
class Motion {
 public:
  static Motion identity(Metric m);
  /// E2: x -> scale * R(angle) * x + shift.
  static Motion euclidean(double angle, double scale, const Vec2& shift);
  /// Rotation about the chart origin (both metrics).
  static Motion rotation(Metric m, double angle);
  /// Isometry moving `c` to the chart origin (translation in E2, boost in H2).
  static Motion to_origin(const Point& c);

  Metric metric() const { return metric_; }
  Point apply(const Point& p) const;
  Motion inverse() const;
  /// (this * other)(x) = this(other(x)).
  Motion compose(const Motion& other) const;
  /// Length scale factor (always 1 in H2).
  double scale() const { return scale_; }

 private:
  Motion(Metric m, const Eigen::Matrix3d& mat, double scale) : metric_(m), mat_(mat), scale_(scale) {}

  Metric metric_;
  // E2: homogeneous affine matrix acting on (1, x, y). H2: Lorentz matrix.
  Eigen::Matrix3d mat_;
  double scale_;
};

}  // namespace perimax

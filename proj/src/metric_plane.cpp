#include "perimax/metric_plane.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "perimax/tolerance.hpp"

namespace perimax {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

void require_hyperbolic(Metric m, const char* what) {
  if (m != Metric::Hyperbolic) throw GeometryError(std::string(what) + " requires the hyperbolic metric");
}

// Euclidean segment routine in the linear chart, parameters on the first
// segment. Returns the kind plus the parameter interval [lo, hi] on s1.
struct ChartHit {
  SegmentIntersection::Kind kind = SegmentIntersection::Kind::Disjoint;
  double lo = 0.0;
  double hi = 0.0;
};

ChartHit chart_segment_hit(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1) {
  constexpr double eps = tol::kPredicate;
  const Vec2 r = p1 - p0;
  const Vec2 s = q1 - q0;
  const Vec2 qp = q0 - p0;
  const double rn = r.norm();
  const double sn = s.norm();
  const double denom = cross2(r, s);
  ChartHit hit;
  if (std::abs(denom) <= eps * rn * sn) {
    // Parallel: only collinear segments can meet.
    if (std::abs(cross2(qp, r)) / rn > eps) return hit;
    const double r2 = r.squaredNorm();
    const double t0 = qp.dot(r) / r2;
    const double t1 = (q1 - p0).dot(r) / r2;
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(1.0, std::max(t0, t1));
    if (lo > hi + eps) return hit;
    if (hi - lo <= eps) {
      hit.kind = SegmentIntersection::Kind::Point;
      hit.lo = hit.hi = std::clamp(0.5 * (lo + hi), 0.0, 1.0);
    } else {
      hit.kind = SegmentIntersection::Kind::Overlap;
      hit.lo = lo;
      hit.hi = hi;
    }
    return hit;
  }
  const double t = cross2(qp, s) / denom;
  const double u = cross2(qp, r) / denom;
  if (t < -eps || t > 1.0 + eps || u < -eps || u > 1.0 + eps) return hit;
  hit.kind = SegmentIntersection::Kind::Point;
  hit.lo = hit.hi = std::clamp(t, 0.0, 1.0);
  return hit;
}

// Distance from x to the closed chart segment [a, b].
double chart_point_segment_distance(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (x - a).norm();
  const double t = std::clamp((x - a).dot(ab) / len2, 0.0, 1.0);
  return (x - (a + t * ab)).norm();
}

bool chart_in_triangle(const Vec2& x, const Vec2& a, const Vec2& b, const Vec2& c) {
  const double area = cross2(b - a, c - a);
  const double scale = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
  if (std::abs(area) <= tol::kPredicate * scale * scale) return false;
  const double sign = area > 0 ? 1.0 : -1.0;
  const std::array<std::pair<Vec2, Vec2>, 3> edges{{{a, b}, {b, c}, {c, a}}};
  for (const auto& [u, v] : edges) {
    const Vec2 e = v - u;
    if (sign * cross2(e, x - u) / e.norm() < -tol::kPredicate) return false;
  }
  return true;
}

Vec3 lorentz_normalize_spacelike(const Vec3& v) {
  const double n2 = -minkowski(v, v);
  if (!(n2 > 0.0)) throw GeometryError("degenerate tangent direction");
  return v / std::sqrt(n2);
}

}  // namespace

std::string_view to_string(Metric m) { return m == Metric::Euclidean ? "euclidean" : "hyperbolic"; }

Metric metric_from_string(std::string_view name) {
  if (name == "euclidean") return Metric::Euclidean;
  if (name == "hyperbolic") return Metric::Hyperbolic;
  throw GeometryError("unknown metric '" + std::string(name) + "'");
}

Point Point::euclidean(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw GeometryError("non-finite coordinates");
  return Point(Metric::Euclidean, Vec3(1.0, x, y));
}

Point Point::poincare(double u, double v) {
  const double r2 = u * u + v * v;
  if (!(r2 < 1.0)) throw GeometryError("Poincare coordinates must lie strictly inside the unit disk");
  const double k = 1.0 / (1.0 - r2);
  return Point(Metric::Hyperbolic, Vec3((1.0 + r2) * k, 2.0 * u * k, 2.0 * v * k));
}

Point Point::klein(const Vec2& c) {
  const double r2 = c.squaredNorm();
  if (!(r2 < 1.0)) throw GeometryError("Klein coordinates must lie strictly inside the unit disk");
  const double x0 = 1.0 / std::sqrt(1.0 - r2);
  return Point(Metric::Hyperbolic, Vec3(x0, c.x() * x0, c.y() * x0));
}

Point Point::hyperboloid(const Vec3& x) {
  const double n2 = minkowski(x, x);
  if (!(x[0] > 0.0) || !(n2 > 0.0)) throw GeometryError("vector is not future timelike");
  return Point(Metric::Hyperbolic, x / std::sqrt(n2));
}

Point Point::from_coords(Metric m, const Vec2& c) {
  return m == Metric::Euclidean ? euclidean(c) : poincare(c);
}

Point Point::from_linear(Metric m, const Vec2& c) {
  return m == Metric::Euclidean ? euclidean(c) : klein(c);
}

Vec2 Point::coords() const {
  if (metric_ == Metric::Euclidean) return {lift_[1], lift_[2]};
  return Vec2(lift_[1], lift_[2]) / (1.0 + lift_[0]);
}

Vec2 Point::linear() const {
  if (metric_ == Metric::Euclidean) return {lift_[1], lift_[2]};
  return Vec2(lift_[1], lift_[2]) / lift_[0];
}

void require_same_metric(const Point& a, const Point& b) {
  if (a.metric() != b.metric()) throw GeometryError("metric mismatch");
}

double distance(const Point& p, const Point& q) {
  require_same_metric(p, q);
  const Vec3& x = p.lift();
  const Vec3& y = q.lift();
  if (p.metric() == Metric::Euclidean) return std::hypot(x[1] - y[1], x[2] - y[2]);
  const double pairing = minkowski(x, y);
  if (pairing >= 2.0) return std::acosh(pairing);
  // Near the diagonal use |x - y|_M = 2 sinh(d/2), which avoids acosh(1 + tiny).
  const Vec3 w = x - y;
  const double chord2 = std::max(0.0, -minkowski(w, w));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

double tangent_dot(Metric m, const Vec3& u, const Vec3& v) {
  if (m == Metric::Euclidean) return u[1] * v[1] + u[2] * v[2];
  return -minkowski(u, v);
}

Vec3 unit_tangent_toward(const Point& from, const Point& to) {
  require_same_metric(from, to);
  if (distance(from, to) <= tol::kPredicate) throw GeometryError("coincident points have no direction");
  const Vec3& f = from.lift();
  const Vec3& t = to.lift();
  if (from.metric() == Metric::Euclidean) {
    Vec3 d(0.0, t[1] - f[1], t[2] - f[2]);
    return d / std::hypot(d[1], d[2]);
  }
  return lorentz_normalize_spacelike(t - minkowski(t, f) * f);
}

Point exp_map(const Point& base, const Vec3& dir, double s) {
  const Vec3& b = base.lift();
  if (base.metric() == Metric::Euclidean) return Point::euclidean(b[1] + s * dir[1], b[2] + s * dir[2]);
  return Point::hyperboloid(std::cosh(s) * b + std::sinh(s) * dir);
}

Point point_along(const Point& from, const Point& toward, double s) {
  return exp_map(from, unit_tangent_toward(from, toward), s);
}

Geodesic::Geodesic(Point a, Point b) : a_(std::move(a)), b_(std::move(b)) {
  require_same_metric(a_, b_);
  if (distance(a_, b_) <= tol::kPredicate) throw GeometryError("geodesic anchors must be distinct");
  origin_ = a_.lift();
  tangent_ = unit_tangent_toward(a_, b_);
  if (metric() == Metric::Euclidean) {
    normal_ = Vec3(0.0, -tangent_[2], tangent_[1]);
  } else {
    // Lorentz-orthogonal to origin and tangent, oriented to the left of the
    // tangent (at the chart origin this is the Euclidean left normal).
    const Vec3 c = origin_.cross(tangent_);
    normal_ = lorentz_normalize_spacelike(Vec3(-c[0], c[1], c[2]));
  }
}

double line_coordinate(const Point& p, const Geodesic& line) {
  require_same_metric(p, line.anchor_a());
  const Vec3& x = p.lift();
  if (p.metric() == Metric::Euclidean) return (x - line.origin()).dot(line.tangent());
  const Vec3 v = x + minkowski(x, line.normal()) * line.normal();
  return std::atanh(std::clamp(-minkowski(v, line.tangent()) / minkowski(v, line.origin()), -1.0, 1.0));
}

Point line_point(const Geodesic& line, double u) { return exp_map(line.anchor_a(), line.tangent(), u); }

double signed_distance(const Point& p, const Geodesic& line) {
  require_same_metric(p, line.anchor_a());
  const Vec3& x = p.lift();
  if (p.metric() == Metric::Euclidean) return (x - line.origin()).dot(line.normal());
  return std::asinh(-minkowski(x, line.normal()));
}

Point orthogonal_project(const Point& p, const Geodesic& line) {
  return line_point(line, line_coordinate(p, line));
}

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2) {
  require_same_metric(s1.from, s1.to);
  require_same_metric(s2.from, s2.to);
  require_same_metric(s1.from, s2.from);
  const Metric m = s1.from.metric();
  const Vec2 p0 = s1.from.linear();
  const Vec2 p1 = s1.to.linear();
  const Vec2 q0 = s2.from.linear();
  const Vec2 q1 = s2.to.linear();
  if ((p1 - p0).norm() <= tol::kPredicate || (q1 - q0).norm() <= tol::kPredicate) {
    throw GeometryError("degenerate segment");
  }
  const ChartHit hit = chart_segment_hit(p0, p1, q0, q1);
  SegmentIntersection out;
  out.kind = hit.kind;
  const auto at = [&](double t) { return Point::from_linear(m, p0 + t * (p1 - p0)); };
  if (hit.kind == SegmentIntersection::Kind::Point) out.point = at(hit.lo);
  if (hit.kind == SegmentIntersection::Kind::Overlap) out.overlap = Segment{at(hit.lo), at(hit.hi)};
  return out;
}

bool segments_intersect(const Segment& s1, const Segment& s2) {
  return segment_intersection(s1, s2).kind != SegmentIntersection::Kind::Disjoint;
}

bool ray_segment_intersects(const Ray& r, const Segment& s) {
  require_same_metric(r.origin, r.anchor);
  require_same_metric(r.origin, s.from);
  require_same_metric(s.from, s.to);
  constexpr double eps = tol::kPredicate;
  const Vec2 o = r.origin.linear();
  Vec2 d = r.anchor.linear() - o;
  if (d.norm() <= eps) throw GeometryError("ray origin coincides with its anchor");
  if (r.sense == Ray::Sense::Away) d = -d;
  d.normalize();
  const Vec2 q0 = s.from.linear();
  const Vec2 q1 = s.to.linear();
  const Vec2 e = q1 - q0;
  if (e.norm() <= eps) throw GeometryError("degenerate segment");
  const Vec2 qo = q0 - o;
  const double denom = cross2(d, e);
  if (std::abs(denom) <= eps * e.norm()) {
    if (std::abs(cross2(qo, d)) > eps) return false;
    return std::max(qo.dot(d), (q1 - o).dot(d)) >= -eps;
  }
  const double t = cross2(qo, e) / denom;
  const double u = cross2(qo, d) / denom;
  return t >= -eps && u >= -eps && u <= 1.0 + eps;
}

double angle_at(const Point& v, const Point& p, const Point& q) {
  require_same_metric(v, p);
  require_same_metric(v, q);
  const double a = distance(v, p);
  const double b = distance(v, q);
  if (a <= tol::kPredicate || b <= tol::kPredicate) throw GeometryError("angle at a coincident vertex");
  if (v.metric() == Metric::Euclidean) {
    const Vec2 u = p.coords() - v.coords();
    const Vec2 w = q.coords() - v.coords();
    return std::atan2(std::abs(cross2(u, w)), u.dot(w));
  }
  const double c = distance(p, q);
  const double cosine = (std::cosh(a) * std::cosh(b) - std::cosh(c)) / (std::sinh(a) * std::sinh(b));
  return std::acos(std::clamp(cosine, -1.0, 1.0));
}

BisectorSide bisector_separates(const Point& x, const Point& p, const Point& q) {
  const double dp = distance(x, p);
  const double dq = distance(x, q);
  if (dp < dq - tol::kPredicate) return BisectorSide::NearerP;
  if (dq < dp - tol::kPredicate) return BisectorSide::NearerQ;
  return BisectorSide::Equidistant;
}

bool in_convex_hull(const Point& x, std::span<const Point> generators) {
  if (generators.empty()) return false;
  std::vector<Vec2> g;
  g.reserve(generators.size());
  for (const auto& pt : generators) {
    require_same_metric(x, pt);
    g.push_back(pt.linear());
  }
  const Vec2 c = x.linear();
  const std::size_t k = g.size();
  for (std::size_t i = 0; i < k; ++i) {
    if ((c - g[i]).norm() <= tol::kPredicate) return true;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (chart_point_segment_distance(c, g[i], g[j]) <= tol::kPredicate) return true;
      for (std::size_t l = j + 1; l < k; ++l) {
        if (chart_in_triangle(c, g[i], g[j], g[l])) return true;
      }
    }
  }
  return false;
}

Hypercycle hypercycle_orthogonal_through(const Geodesic& base, const Point& p, const Point& a) {
  require_hyperbolic(base.metric(), "hypercycle");
  require_same_metric(p, a);
  require_same_metric(p, base.anchor_a());
  const Vec3& o = base.origin();
  const Vec3& e = base.tangent();
  // The perpendicular to `base` at coordinate t has unit normal
  // sinh(t) o + cosh(t) e; equal signed distances of p and a fix tanh(t).
  const double dpo = minkowski(p.lift(), o), dao = minkowski(a.lift(), o);
  const double dpe = minkowski(p.lift(), e), dae = minkowski(a.lift(), e);
  const double diff_o = dpo - dao;
  const double diff_e = dpe - dae;
  const double scale = std::max({std::abs(dpo), std::abs(dao), 1.0});
  if (std::abs(diff_o) <= tol::kPredicate * scale && std::abs(diff_e) <= tol::kPredicate * scale) {
    throw GeometryError("infeasible hypercycle");
  }
  double t = 0.0;
  if (std::abs(diff_e) < std::abs(diff_o) * (1.0 - tol::kPredicate)) {
    t = std::atanh(-diff_e / diff_o);
  } else {
    // Mirror branches: sum of pairings vanishes instead. |sum_e| < sum_o holds
    // for any two points, so this branch is always solvable.
    t = std::atanh(-(dpe + dae) / (dpo + dao));
  }
  const Point foot = line_point(base, t);
  const Point along = exp_map(foot, base.normal(), 1.0);
  Geodesic reference(foot, along);
  const double offset = signed_distance(p, reference);
  return Hypercycle{std::move(reference), offset};
}

Hypercycle hypercycle_through(const Geodesic& reference, const Point& c) {
  require_hyperbolic(reference.metric(), "hypercycle");
  return Hypercycle{reference, signed_distance(c, reference)};
}

Point hypercycle_point(const Hypercycle& h, double u) {
  require_hyperbolic(h.reference.metric(), "hypercycle");
  const Geodesic& r = h.reference;
  const double s = h.signed_offset;
  const Vec3 g = std::cosh(u) * r.origin() + std::sinh(u) * r.tangent();
  return Point::hyperboloid(std::cosh(s) * g + std::sinh(s) * r.normal());
}

bool on_hypercycle(const Hypercycle& h, const Point& x, double tolerance) {
  return std::abs(std::abs(signed_distance(x, h.reference)) - std::abs(h.signed_offset)) <= tolerance;
}

bool hypercycle_distance_monotone_check(const Point& x, const Hypercycle& h, const Point& y1,
                                        const Point& y2) {
  require_hyperbolic(h.reference.metric(), "hypercycle");
  if (!on_hypercycle(h, y1, tol::kProperty) || !on_hypercycle(h, y2, tol::kProperty)) {
    throw GeometryError("point is not on the hypercycle");
  }
  const double ux = line_coordinate(x, h.reference);
  const double arc1 = std::abs(line_coordinate(y1, h.reference) - ux);
  const double arc2 = std::abs(line_coordinate(y2, h.reference) - ux);
  const double d1 = distance(x, y1);
  const double d2 = distance(x, y2);
  if (arc2 >= arc1) return d2 >= d1 - tol::kProperty;
  return d1 >= d2 - tol::kProperty;
}

Motion Motion::identity(Metric m) { return Motion(m, Eigen::Matrix3d::Identity(), 1.0); }

Motion Motion::euclidean(double angle, double scale, const Vec2& shift) {
  if (!(scale > 0.0)) throw GeometryError("similarity scale must be positive");
  const double c = std::cos(angle) * scale;
  const double s = std::sin(angle) * scale;
  Eigen::Matrix3d mat;
  mat << 1.0, 0.0, 0.0, shift.x(), c, -s, shift.y(), s, c;
  return Motion(Metric::Euclidean, mat, scale);
}

Motion Motion::rotation(Metric m, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d mat;
  mat << 1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c;
  return Motion(m, mat, 1.0);
}

Motion Motion::to_origin(const Point& c) {
  const Vec3& x = c.lift();
  if (c.metric() == Metric::Euclidean) return euclidean(0.0, 1.0, Vec2(-x[1], -x[2]));
  // Inverse of the boost taking the origin to c.
  const double k = 1.0 / (1.0 + x[0]);
  const double b1 = -x[1];
  const double b2 = -x[2];
  Eigen::Matrix3d mat;
  mat << x[0], b1, b2, b1, 1.0 + b1 * b1 * k, b1 * b2 * k, b2, b1 * b2 * k, 1.0 + b2 * b2 * k;
  return Motion(Metric::Hyperbolic, mat, 1.0);
}

Point Motion::apply(const Point& p) const {
  if (p.metric() != metric_) throw GeometryError("metric mismatch");
  const Vec3 v = mat_ * p.lift();
  if (metric_ == Metric::Euclidean) return Point::euclidean(v[1], v[2]);
  return Point::hyperboloid(v);
}

Motion Motion::inverse() const {
  if (metric_ == Metric::Euclidean) return Motion(metric_, mat_.inverse(), 1.0 / scale_);
  const Eigen::Matrix3d j = Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
  return Motion(metric_, j * mat_.transpose() * j, 1.0);
}

Motion Motion::compose(const Motion& other) const {
  if (other.metric_ != metric_) throw GeometryError("metric mismatch");
  return Motion(metric_, mat_ * other.mat_, scale_ * other.scale_);
}

}  // namespace perimax

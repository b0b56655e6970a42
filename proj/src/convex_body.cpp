#include "perimax/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "perimax/tolerance.hpp"

namespace perimax {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double wrap_unit(double t) {
  double w = t - std::floor(t);
  return w >= 1.0 ? 0.0 : w;
}

}  // namespace

ConvexBody::ConvexBody(Metric m, std::variant<Disk, ConvexPolygon> shape)
    : metric_(m), shape_(std::move(shape)) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&shape_)) {
    const auto& v = poly->vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      edge_lengths_.push_back(distance(v[i], v[(i + 1) % v.size()]));
      perimeter_ += edge_lengths_.back();
    }
  }
}

ConvexBody ConvexBody::disk(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw GeometryError("disk radius must be positive and finite");
  const Metric m = center.metric();
  return ConvexBody(m, Disk{std::move(center), radius});
}

ConvexBody ConvexBody::polygon(std::vector<Point> vertices) {
  if (vertices.size() < 3) throw GeometryError("convex polygon needs at least 3 vertices");
  const Metric m = vertices.front().metric();
  for (const auto& v : vertices) require_same_metric(vertices.front(), v);
  const std::size_t k = vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2 a = vertices[i].linear();
    const Vec2 b = vertices[(i + 1) % k].linear();
    const Vec2 c = vertices[(i + 2) % k].linear();
    if (cross2(b - a, c - b) <= tol::kPredicate) {
      throw GeometryError("polygon vertices are not in strictly convex counterclockwise position");
    }
  }
  // Local left turns everywhere still admit a polygon that winds twice.
  double winding = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2 a = vertices[i].linear();
    const Vec2 b = vertices[(i + 1) % k].linear();
    const Vec2 c = vertices[(i + 2) % k].linear();
    winding += std::atan2(cross2(b - a, c - b), (b - a).dot(c - b));
  }
  if (std::abs(winding - kTwoPi) > 1e-6) {
    throw GeometryError("polygon vertices are not in strictly convex counterclockwise position");
  }
  return ConvexBody(m, ConvexPolygon{std::move(vertices)});
}

Point ConvexBody::reference_point() const {
  if (is_disk()) return as_disk().center;
  Vec2 sum = Vec2::Zero();
  for (const auto& v : as_polygon().vertices) sum += v.linear();
  return Point::from_linear(metric_, sum / static_cast<double>(as_polygon().vertices.size()));
}

bool ConvexBody::contains(const Point& p) const {
  require_same_metric(p, is_disk() ? as_disk().center : as_polygon().vertices.front());
  if (is_disk()) return distance(as_disk().center, p) <= as_disk().radius + tol::kPredicate;
  const auto& v = as_polygon().vertices;
  const Vec2 x = p.linear();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i].linear();
    const Vec2 e = v[(i + 1) % v.size()].linear() - a;
    if (cross2(e, x - a) / e.norm() < -tol::kPredicate) return false;
  }
  return true;
}

bool ConvexBody::on_boundary(const Point& p, double tolerance) const {
  if (!contains(p)) return false;
  if (is_disk()) return distance(as_disk().center, p) >= as_disk().radius - tolerance;
  const auto& v = as_polygon().vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Geodesic edge(v[i], v[(i + 1) % v.size()]);
    if (std::abs(signed_distance(p, edge)) <= tolerance) return true;
  }
  return false;
}

Point ConvexBody::boundary_point(double t) const {
  t = wrap_unit(t);
  if (is_disk()) {
    const Disk& d = as_disk();
    const double angle = kTwoPi * t;
    const Vec3 dir(0.0, std::cos(angle), std::sin(angle));
    if (metric_ == Metric::Euclidean) return exp_map(d.center, dir, d.radius);
    // Walk from the chart origin and carry the result to the center; the
    // boost preserves directions at the origin.
    const Point at_origin = exp_map(Point::poincare(0.0, 0.0), dir, d.radius);
    return Motion::to_origin(d.center).inverse().apply(at_origin);
  }
  const auto& v = as_polygon().vertices;
  double arc = t * perimeter_;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (arc <= edge_lengths_[i] || i + 1 == v.size()) {
      const double s = std::min(arc, edge_lengths_[i]);
      return point_along(v[i], v[(i + 1) % v.size()], s);
    }
    arc -= edge_lengths_[i];
  }
  return v.front();
}

double ConvexBody::boundary_parameter(const Point& p) const {
  if (is_disk()) {
    const Vec2 c = Motion::to_origin(as_disk().center).apply(p).coords();
    return wrap_unit(std::atan2(c.y(), c.x()) / kTwoPi);
  }
  const auto& v = as_polygon().vertices;
  double best = std::numeric_limits<double>::infinity();
  double param = 0.0;
  double before = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Geodesic edge(v[i], v[(i + 1) % v.size()]);
    const double u = std::clamp(line_coordinate(p, edge), 0.0, edge_lengths_[i]);
    const double miss = distance(p, line_point(edge, u));
    if (miss < best) {
      best = miss;
      param = (before + u) / perimeter_;
    }
    before += edge_lengths_[i];
  }
  return wrap_unit(param);
}

Point ConvexBody::ray_exit(const Point& origin, const Point& anchor) const {
  if (!contains(origin)) throw GeometryError("origin outside body");
  const Vec3 dir = unit_tangent_toward(origin, anchor);
  // Bracket the exit by doubling, then bisect on arc length.
  double lo = 0.0;
  double hi = std::max(diameter(), 1e-6);
  while (contains(exp_map(origin, dir, hi))) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw GeometryError("ray does not leave the body");
  }
  while (hi - lo > tol::kPredicate * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (contains(exp_map(origin, dir, mid)) ? lo : hi) = mid;
  }
  return lo == 0.0 ? origin : exp_map(origin, dir, lo);
}

double ConvexBody::diameter() const {
  if (is_disk()) return 2.0 * as_disk().radius;
  const auto [a, b] = diameter_pair();
  return distance(a, b);
}

std::pair<Point, Point> ConvexBody::diameter_pair() const {
  if (is_disk()) return {boundary_point(0.0), boundary_point(0.5)};
  const auto& v = as_polygon().vertices;
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double d = distance(v[i], v[j]);
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  return {v[bi], v[bj]};
}

std::pair<Vec2, Vec2> ConvexBody::linear_bounds() const {
  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  const auto grow = [&](const Vec2& c) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  };
  if (is_disk()) {
    if (metric_ == Metric::Euclidean) {
      const Vec2 c = as_disk().center.coords();
      const double r = as_disk().radius;
      return {c - Vec2::Constant(r), c + Vec2::Constant(r)};
    }
    // A hyperbolic disk is an ellipse in the Klein chart; pad a dense sample.
    constexpr int kSamples = 512;
    for (int i = 0; i < kSamples; ++i) grow(boundary_point(static_cast<double>(i) / kSamples).linear());
    const Vec2 pad = 0.01 * (hi - lo);
    lo -= pad;
    hi += pad;
    if (metric_ == Metric::Hyperbolic) {
      lo = lo.cwiseMax(Vec2::Constant(-1.0));
      hi = hi.cwiseMin(Vec2::Constant(1.0));
    }
    return {lo, hi};
  }
  for (const auto& v : as_polygon().vertices) grow(v.linear());
  return {lo, hi};
}

Point ConvexBody::sample(std::mt19937_64& rng) const {
  const auto [lo, hi] = linear_bounds();
  std::uniform_real_distribution<double> ux(lo.x(), hi.x());
  std::uniform_real_distribution<double> uy(lo.y(), hi.y());
  for (;;) {
    const Vec2 c(ux(rng), uy(rng));
    if (metric_ == Metric::Hyperbolic && c.squaredNorm() >= 1.0) continue;
    const Point p = Point::from_linear(metric_, c);
    if (contains(p)) return p;
  }
}

}  // namespace perimax

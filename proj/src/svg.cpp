#include "perimax/svg.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace perimax {

namespace {

constexpr double kView = 1000.0;
constexpr double kMargin = 20.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

struct Frame {
  double scale = 1.0;
  Vec2 offset = Vec2::Zero();

  Vec2 screen(const Vec2& c) const { return {offset.x() + scale * c.x(), offset.y() - scale * c.y()}; }
};

Frame frame_for(const ConvexBody& body) {
  if (body.metric() == Metric::Hyperbolic) {
    const double s = 0.5 * kView - kMargin;
    return {s, Vec2(0.5 * kView, 0.5 * kView)};
  }
  const auto [lo, hi] = body.linear_bounds();
  const double extent = std::max(hi.x() - lo.x(), hi.y() - lo.y());
  const double s = (kView - 2.0 * kMargin) / extent;
  const Vec2 mid = 0.5 * (lo + hi);
  return {s, Vec2(0.5 * kView - s * mid.x(), 0.5 * kView + s * mid.y())};
}

// Chart circle through three points.
std::pair<Vec2, double> circumcircle(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) + c.x() * (a.y() - b.y()));
  const double a2 = a.squaredNorm(), b2 = b.squaredNorm(), c2 = c.squaredNorm();
  const Vec2 center((a2 * (b.y() - c.y()) + b2 * (c.y() - a.y()) + c2 * (a.y() - b.y())) / d,
                    (a2 * (c.x() - b.x()) + b2 * (a.x() - c.x()) + c2 * (b.x() - a.x())) / d);
  return {center, (a - center).norm()};
}

std::string circle_path(const Vec2& center, double radius, const Frame& f) {
  const Vec2 right = f.screen(center + Vec2(radius, 0.0));
  const Vec2 left = f.screen(center - Vec2(radius, 0.0));
  const std::string r = num(f.scale * radius);
  return "M " + num(right.x()) + " " + num(right.y()) + " A " + r + " " + r + " 0 1 0 " + num(left.x()) + " " +
         num(left.y()) + " A " + r + " " + r + " 0 1 0 " + num(right.x()) + " " + num(right.y()) + " Z";
}

std::string body_path(const ConvexBody& body, const Frame& f) {
  if (!body.is_disk()) return geodesic_path(body.metric(), body.as_polygon().vertices, f.scale, f.offset);
  if (body.metric() == Metric::Euclidean) {
    return circle_path(body.as_disk().center.coords(), body.as_disk().radius, f);
  }
  // Hyperbolic circles are Euclidean circles in the Poincare disk.
  const auto [c, r] = circumcircle(body.boundary_point(0.0).coords(), body.boundary_point(1.0 / 3.0).coords(),
                                   body.boundary_point(2.0 / 3.0).coords());
  return circle_path(c, r, f);
}

}  // namespace

std::optional<ArcCircle> poincare_geodesic_circle(const Vec2& u, const Vec2& v) {
  const double det = u.x() * v.y() - u.y() * v.x();
  if (std::abs(det) < 1e-12) return std::nullopt;
  const double ru = 0.5 * (u.squaredNorm() + 1.0);
  const double rv = 0.5 * (v.squaredNorm() + 1.0);
  const Vec2 c((ru * v.y() - rv * u.y()) / det, (rv * u.x() - ru * v.x()) / det);
  return ArcCircle{c, std::sqrt(c.squaredNorm() - 1.0)};
}

std::string geodesic_path(Metric m, const std::vector<Point>& vertices, double scale, const Vec2& offset) {
  const Frame f{scale, offset};
  std::string d;
  const std::size_t n = vertices.size();
  const Vec2 first = f.screen(vertices[0].coords());
  d += "M " + num(first.x()) + " " + num(first.y());
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 u = vertices[i].coords();
    const Vec2 v = vertices[(i + 1) % n].coords();
    const Vec2 sv = f.screen(v);
    const auto arc = m == Metric::Hyperbolic ? poincare_geodesic_circle(u, v) : std::nullopt;
    if (!arc) {
      d += " L " + num(sv.x()) + " " + num(sv.y());
      continue;
    }
    const Vec2 su = f.screen(u) - f.screen(arc->center);
    const Vec2 sw = sv - f.screen(arc->center);
    const int sweep = su.x() * sw.y() - su.y() * sw.x() > 0.0 ? 1 : 0;
    const std::string r = num(scale * arc->radius);
    d += " A " + r + " " + r + " 0 0 " + std::to_string(sweep) + " " + num(sv.x()) + " " + num(sv.y());
  }
  return d + " Z";
}

std::string render_svg(const SvgScene& scene) {
  const Frame f = frame_for(scene.body);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
  if (scene.body.metric() == Metric::Hyperbolic) {
    out += "<circle id=\"model\" cx=\"500\" cy=\"500\" r=\"" + num(f.scale) +
           "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  }
  out += "<path id=\"body\" d=\"" + body_path(scene.body, f) +
         "\" fill=\"#eef3fb\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n";
  if (scene.polygon) {
    out += "<path id=\"polygon\" d=\"" +
           geodesic_path(scene.polygon->metric(), scene.polygon->vertices(), f.scale, f.offset) +
           "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\" stroke-linejoin=\"round\"/>\n";
  }
  if (scene.triangle) {
    out += "<path id=\"triangle\" d=\"" + geodesic_path(scene.body.metric(), *scene.triangle, f.scale, f.offset) +
           "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace perimax

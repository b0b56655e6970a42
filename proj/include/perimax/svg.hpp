#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perimax/convex_body.hpp"
#include "perimax/metric_plane.hpp"
#include "perimax/simple_polygon.hpp"

namespace perimax {

/// Circle through two points of the Poincare disk orthogonal to the unit
/// circle; nullopt when the geodesic is a diameter (drawn straight).
struct ArcCircle {
  Vec2 center;
  double radius = 0.0;
};
std::optional<ArcCircle> poincare_geodesic_circle(const Vec2& u, const Vec2& v);

/// Path data for the closed geodesic polygon through `vertices`
/// (chart coordinates, 1000x1000 viewBox, second axis up).
std::string geodesic_path(Metric m, const std::vector<Point>& vertices, double scale, const Vec2& offset);

struct SvgScene {
  ConvexBody body;
  std::optional<ClosedPolygon> polygon;
  std::optional<std::vector<Point>> triangle;
};

/// Layers are always body, polygon, triangle.
std::string render_svg(const SvgScene& scene);

}  // namespace perimax

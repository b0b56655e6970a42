#include <gtest/gtest.h>

#include <cmath>
#include <regex>

#include "perimax/certificate.hpp"
#include "perimax/json_io.hpp"
#include "perimax/svg.hpp"
#include "test_util.hpp"

using namespace perimax;
using namespace perimax::testing;

namespace {

TEST(Json, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(8.0), "8.0");
  EXPECT_EQ(format_double(-2.0), "-2.0");
  EXPECT_EQ(format_double(1e300), "1.0000000000000001e+300");
  EXPECT_EQ(format_double(std::nan("")), "null");
  EXPECT_EQ(format_double(std::sqrt(3.0)), "1.7320508075688772");
}

TEST(Json, DoublesRoundTripExactly) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    EXPECT_EQ(parse_json(format_double(x)).get<double>(), x);
  }
}

TEST(Json, BodyRoundTrip) {
  for (const ConvexBody& body :
       {unit_disk(), unit_square(), hyperbolic_disk(0.7), ConvexBody::disk(H(0.2, -0.1), 1.3),
        ConvexBody::polygon({H(0.5, 0.0), H(0.0, 0.5), H(-0.5, 0.0), H(0.0, -0.5)})}) {
    const Json j = to_json(body);
    const ConvexBody back = body_from_json(parse_json(dump(j)));
    EXPECT_EQ(dump(to_json(back)), dump(j));
    EXPECT_EQ(back.metric(), body.metric());
  }
}

TEST(Json, BodyFormat) {
  EXPECT_EQ(dump(to_json(unit_disk())),
            "{\n  \"metric\": \"euclidean\",\n  \"shape\": {\n    \"type\": \"disk\",\n    \"center\": [0.0, 0.0],\n"
            "    \"radius\": 1.0\n  }\n}\n");
  const ConvexBody d = body_from_json(parse_json(
      R"({"metric": "hyperbolic", "shape": {"type": "disk", "center": [0, 0], "radius": 1}})"));
  EXPECT_EQ(d.metric(), Metric::Hyperbolic);
  EXPECT_DOUBLE_EQ(d.as_disk().radius, 1.0);
}

TEST(Json, PolygonRoundTripKeepsPoincareCoordinates) {
  std::mt19937_64 rng(52);
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(random_poincare(rng, 0.9));
  const ClosedPolygon p(pts);
  const ClosedPolygon back = polygon_from_json(parse_json(dump(to_json(p))));
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(back[i].coords(), p[i].coords());
}

TEST(Json, ParseErrors) {
  const auto message = [](const char* text) {
    try {
      body_from_json(parse_json(text));
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("{").find("invalid JSON"), std::string::npos);
  EXPECT_EQ(message(R"({"shape": {}})"), "missing field \"metric\"");
  EXPECT_NE(message(R"({"metric": "spherical", "shape": {"type": "disk"}})"), "no error");
  EXPECT_EQ(message(R"({"metric": "euclidean", "shape": {"type": "blob"}})"), "unknown shape type \"blob\"");
  EXPECT_EQ(message(R"({"metric": "euclidean", "shape": {"type": "disk", "center": [0], "radius": 1}})"),
            "a point must be an array [x, y]");
  EXPECT_NE(message(R"({"metric": "hyperbolic", "shape": {"type": "disk", "center": [1, 0], "radius": 1}})"),
            "no error");
  EXPECT_THROW(polygon_from_json(parse_json(R"({"metric": "euclidean", "vertices": [[0, 0], [1, 0]]})")),
               ParseError);
}

TEST(Json, CertificateFields) {
  const Json j = to_json(certify(regular_polygon(5), unit_disk()));
  for (const char* key : {"bound", "perimeter", "slack", "triangle", "sides", "trace"}) EXPECT_TRUE(j.contains(key));
  for (const char* key : {"j", "zeta", "case", "triple", "candidates", "labels"}) EXPECT_TRUE(j["trace"].contains(key));
  EXPECT_EQ(j["trace"]["case"], "long-ac");
  EXPECT_EQ(j["trace"]["candidates"].size(), 10u);
}

TEST(Json, BoundFields) {
  const Json j = to_json(compute_bound(unit_disk(), 5));
  EXPECT_EQ(j["n"], 5);
  EXPECT_NEAR(j["value"].get<double>(), 8.977478838763945, 1e-9);
  EXPECT_EQ(j["triangle"].size(), 3u);
  EXPECT_EQ(j["sides"].size(), 3u);
  EXPECT_TRUE(j["diagnostics"].contains("method"));
}

std::vector<std::string> path_ids(const std::string& svg) {
  std::vector<std::string> ids;
  const std::regex re("<path id=\"([a-z]+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    ids.push_back((*it)[1]);
  }
  return ids;
}

TEST(Svg, BodyOnlyIsOneClosedPath) {
  const std::string svg = render_svg({unit_square(), std::nullopt, std::nullopt});
  EXPECT_EQ(path_ids(svg), std::vector<std::string>{"body"});
  EXPECT_NE(svg.find("viewBox=\"0 0 1000 1000\""), std::string::npos);
  EXPECT_NE(svg.find(" Z\""), std::string::npos);
}

TEST(Svg, LayerOrderAndDeterminism) {
  const ClosedPolygon p = regular_polygon(5, 0.9);
  const TriangleCertificate c = certify(p, unit_disk());
  const std::vector<Point> tri(c.triangle.vertices.begin(), c.triangle.vertices.end());
  const SvgScene scene{unit_disk(), p, tri};
  const std::string svg = render_svg(scene);
  EXPECT_EQ(path_ids(svg), (std::vector<std::string>{"body", "polygon", "triangle"}));
  EXPECT_EQ(svg, render_svg(scene));
}

TEST(Svg, SecondAxisPointsUp) {
  // Unit square: chart (0, 1) maps to the top-left corner of the drawing area.
  const std::string d = geodesic_path(Metric::Euclidean, {E(0, 0), E(0, 1)}, 960.0, Vec2(20.0, 980.0));
  EXPECT_EQ(d, "M 20.0000 980.0000 L 20.0000 20.0000 L 20.0000 980.0000 Z");
}

TEST(Svg, GeodesicArcsAreOrthogonalToTheUnitCircle) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 u = random_poincare(rng, 0.95).coords(), v = random_poincare(rng, 0.95).coords();
    const auto arc = poincare_geodesic_circle(u, v);
    if (!arc) continue;
    EXPECT_NEAR((u - arc->center).norm(), arc->radius, 1e-9 * (1.0 + arc->radius));
    EXPECT_NEAR((v - arc->center).norm(), arc->radius, 1e-9 * (1.0 + arc->radius));
    // Orthogonality: |c|^2 = 1 + r^2.
    EXPECT_NEAR(arc->center.squaredNorm(), 1.0 + arc->radius * arc->radius,
                1e-9 * (1.0 + arc->center.squaredNorm()));
  }
  EXPECT_FALSE(poincare_geodesic_circle(Vec2(0.5, 0.0), Vec2(-0.3, 0.0)));
}

TEST(Svg, HyperbolicTriangleUsesArcsFromPathData) {
  const std::vector<Point> tri{H(0.6, 0.0), H(-0.3, 0.5), H(-0.3, -0.5)};
  const std::string svg = render_svg({hyperbolic_disk(1.5), std::nullopt, tri});
  EXPECT_EQ(path_ids(svg), (std::vector<std::string>{"body", "triangle"}));
  EXPECT_NE(svg.find("<circle id=\"model\""), std::string::npos);
  // Recover each arc radius from the path and check it against the orthogonal circle.
  const auto start = svg.find("id=\"triangle\" d=\"");
  const std::string d = svg.substr(start, svg.find('"', start + 17) - start);
  const std::regex arc_re("A ([0-9.]+) ");
  std::vector<double> radii;
  for (auto it = std::sregex_iterator(d.begin(), d.end(), arc_re); it != std::sregex_iterator(); ++it) {
    radii.push_back(std::stod((*it)[1]));
  }
  ASSERT_EQ(radii.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto arc = poincare_geodesic_circle(tri[i].coords(), tri[(i + 1) % 3].coords());
    ASSERT_TRUE(arc);
    EXPECT_NEAR(radii[i], 480.0 * arc->radius, 1e-4);
  }
}

}  // namespace

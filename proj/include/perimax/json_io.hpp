#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "perimax/certificate.hpp"
#include "perimax/convex_body.hpp"
#include "perimax/search_harness.hpp"
#include "perimax/simple_polygon.hpp"
#include "perimax/triangle_bound.hpp"

namespace perimax {

using Json = nlohmann::ordered_json;

/// Malformed document or field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json parse_json(std::string_view text);
std::string read_file(const std::string& path);

ConvexBody body_from_json(const Json& j);
ClosedPolygon polygon_from_json(const Json& j);
Point point_from_json(Metric m, const Json& j);

Json to_json(const Point& p);
Json to_json(const ConvexBody& body);
Json to_json(const ClosedPolygon& p);
Json to_json(const BoundResult& r);
Json to_json(const TriangleCertificate& c);
Json to_json(const SearchReport& r);

/// Compact JSON with every floating-point number printed as %.17g.
std::string dump(const Json& j);
std::string format_double(double x);

}  // namespace perimax

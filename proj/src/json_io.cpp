#include "perimax/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace perimax {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<Point> points_from_json(Metric m, const Json& j) {
  if (!j.is_array()) throw ParseError("vertices must be an array");
  std::vector<Point> pts;
  pts.reserve(j.size());
  for (const auto& v : j) pts.push_back(point_from_json(m, v));
  return pts;
}

Metric metric_field(const Json& j) {
  const Json& m = field(j, "metric");
  if (!m.is_string()) throw ParseError("metric must be a string");
  try {
    return metric_from_string(m.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

bool all_scalar(const Json& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void write(std::string& out, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        write(out, v, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool inline_items = all_scalar(j);
      out += inline_items ? "[" : "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += inline_items ? ", " : ",\n";
        first = false;
        if (!inline_items) out += pad;
        write(out, v, depth + 1);
      }
      out += inline_items ? "]" : "\n" + close_pad + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

Json triangle_json(const InscribedTriangle& t) {
  Json tri = Json::array();
  for (const auto& v : t.vertices) tri.push_back(to_json(v));
  return tri;
}

Json sides_json(const SortedSides& s) { return Json::array({s.alpha, s.beta, s.gamma}); }

Json labels_json(const std::array<char, 3>& labels) {
  Json out = Json::array();
  for (char c : labels) out.push_back(std::string(1, c));
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep a float marker so the value re-parses as a double.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += '\n';
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Point point_from_json(Metric m, const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a point must be an array [x, y]");
  const Vec2 c(number(j[0], "coordinate"), number(j[1], "coordinate"));
  if (!c.allFinite()) throw ParseError("coordinates must be finite");
  try {
    return Point::from_coords(m, c);
  } catch (const GeometryError& e) {
    throw ParseError(e.what());
  }
}

ConvexBody body_from_json(const Json& j) {
  const Metric m = metric_field(j);
  const Json& shape = field(j, "shape");
  const Json& type = field(shape, "type");
  if (!type.is_string()) throw ParseError("shape type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "disk") {
    const Point center = point_from_json(m, field(shape, "center"));
    return ConvexBody::disk(center, number(field(shape, "radius"), "radius"));
  }
  if (t == "polygon") return ConvexBody::polygon(points_from_json(m, field(shape, "vertices")));
  throw ParseError("unknown shape type \"" + t + "\"");
}

ClosedPolygon polygon_from_json(const Json& j) {
  const Metric m = metric_field(j);
  auto pts = points_from_json(m, field(j, "vertices"));
  if (pts.size() < 3) throw ParseError("a polygon needs at least 3 vertices");
  return ClosedPolygon(std::move(pts));
}

Json to_json(const Point& p) {
  const Vec2 c = p.coords();
  return Json::array({c.x(), c.y()});
}

Json to_json(const ConvexBody& body) {
  Json shape;
  if (body.is_disk()) {
    shape["type"] = "disk";
    shape["center"] = to_json(body.as_disk().center);
    shape["radius"] = body.as_disk().radius;
  } else {
    shape["type"] = "polygon";
    Json verts = Json::array();
    for (const auto& v : body.as_polygon().vertices) verts.push_back(to_json(v));
    shape["vertices"] = verts;
  }
  return Json{{"metric", std::string(to_string(body.metric()))}, {"shape", shape}};
}

Json to_json(const ClosedPolygon& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(to_json(v));
  return Json{{"metric", std::string(to_string(p.metric()))}, {"vertices", verts}};
}

Json to_json(const BoundResult& r) {
  const auto& d = r.diagnostics;
  return Json{{"n", r.n},
              {"value", r.value},
              {"triangle", triangle_json(r.triangle)},
              {"sides", sides_json(r.triangle.sides)},
              {"params", Json::array({r.triangle.params[0], r.triangle.params[1], r.triangle.params[2]})},
              {"diagnostics",
               {{"method", d.method},
                {"grid", d.grid},
                {"refinement_sweeps", d.refinement_sweeps},
                {"parameter_tolerance", d.parameter_tolerance}}}};
}

Json to_json(const TriangleCertificate& c) {
  const auto& t = c.trace;
  Json labels;
  static constexpr std::array<const char*, 5> kNames{"p", "q", "a", "b", "c"};
  for (std::size_t i = 0; i < 5; ++i) labels[kNames[i]] = t.labels[i];
  Json candidates = Json::array();
  for (const auto& cand : t.candidates) {
    candidates.push_back({{"triple", labels_json(cand.labels)},
                          {"sides", sides_json(cand.sides)},
                          {"score", cand.score}});
  }
  return Json{{"bound", c.bound},
              {"perimeter", c.perimeter},
              {"slack", c.slack},
              {"triangle", triangle_json(c.triangle)},
              {"sides", sides_json(c.triangle.sides)},
              {"trace",
               {{"longest_edge", t.longest_edge},
                {"rho", t.rho},
                {"theta", t.theta},
                {"zeta", t.zeta},
                {"j", t.j},
                {"flipped", t.flipped},
                {"labels", labels},
                {"case", t.case_tag},
                {"triple", labels_json(t.winner.labels)},
                {"score", t.winner.score},
                {"candidates", candidates}}}};
}

Json to_json(const SearchReport& r) {
  Json restarts = Json::array();
  for (const auto& rec : r.restarts) {
    restarts.push_back({{"index", rec.index},
                        {"seed", rec.seed},
                        {"start_perimeter", rec.start_perimeter},
                        {"best_perimeter", rec.best_perimeter},
                        {"certificate_bound", rec.certificate_bound},
                        {"certificate_slack", rec.certificate_slack}});
  }
  Json out{{"n", r.n},
           {"bound", r.bound},
           {"bound_method", r.bound_method},
           {"trials", r.trials},
           {"steps", r.steps},
           {"seed", r.seed},
           {"best_perimeter", r.best_perimeter},
           {"best_restart", r.best_restart},
           {"best_polygon", r.best_polygon ? to_json(*r.best_polygon) : Json()},
           {"max_violation", r.max_violation},
           {"certified", r.certified},
           {"min_certificate_slack", r.min_certificate_slack},
           {"passed", true},
           {"restarts", restarts}};
  return out;
}

}  // namespace perimax

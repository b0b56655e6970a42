#include "perimax/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "perimax/certificate.hpp"
#include "perimax/search_harness.hpp"
#include "perimax/svg.hpp"
#include "perimax/tolerance.hpp"

namespace perimax::cli {

namespace {

// Failure carrying an exit code and a message for stderr.
struct Exit {
  int code;
  std::string message;
};

ConvexBody load_body(const std::string& path) {
  try {
    return body_from_json(parse_json(read_file(path)));
  } catch (const ParseError& e) {
    throw Exit{kUsage, "cannot parse body: " + std::string(e.what())};
  } catch (const std::exception& e) {
    throw Exit{kInvalidInput, "invalid body: " + std::string(e.what())};
  }
}

ClosedPolygon load_polygon(const std::string& path) {
  try {
    return polygon_from_json(parse_json(read_file(path)));
  } catch (const std::exception& e) {
    throw Exit{kUsage, "cannot parse polygon: " + std::string(e.what())};
  }
}

// Accepts a polygon document or any document with a "triangle" field.
std::vector<Point> load_triangle(const std::string& path, Metric body_metric) {
  try {
    const Json j = parse_json(read_file(path));
    if (j.is_object() && j.contains("triangle")) {
      std::vector<Point> pts;
      for (const auto& v : j.at("triangle")) pts.push_back(point_from_json(body_metric, v));
      if (pts.size() != 3) throw ParseError("triangle must have 3 vertices");
      return pts;
    }
    return polygon_from_json(j).vertices();
  } catch (const std::exception& e) {
    throw Exit{kUsage, "cannot parse triangle: " + std::string(e.what())};
  }
}

void require_n(int n) {
  if (n < 3) throw Exit{kUsage, "n must be at least 3"};
}

// ---- bound ----

int cmd_bound(const std::string& body_path, int n, std::optional<int> grid, bool json, bool plain,
              std::ostream& out, std::ostream& err) {
  const ConvexBody body = load_body(body_path);
  require_n(n);
  if (grid && *grid < 24) throw Exit{kUsage, "grid must be at least 24"};
  if (n % 2 == 0) {
    const auto [d1, d2] = body.diameter_pair();
    const double diam = body.diameter();
    const double value = n * diam;
    const Json doc{{"n", n},
                   {"value", value},
                   {"label", "even-n diameter bound"},
                   {"diameter", diam},
                   {"diameter_pair", Json::array({to_json(d1), to_json(d2)})}};
    if (json) {
      out << dump(doc);
      err << "even-n diameter bound: " << format_double(value) << '\n';
    } else if (plain) {
      out << format_double(value) << '\n';
    } else {
      out << "even-n diameter bound: " << format_double(value) << " (n = " << n
          << ", diam = " << format_double(diam) << ")\n";
    }
    return kPass;
  }
  const BoundResult r = compute_bound(body, n, grid);
  if (json) {
    out << dump(to_json(r));
    err << "bound: " << format_double(r.value) << '\n';
    return kPass;
  }
  if (plain) {
    out << format_double(r.value) << '\n';
    return kPass;
  }
  out << "bound: " << format_double(r.value) << " (n = " << n << ")\n";
  out << "sides: " << format_double(r.triangle.sides.alpha) << ' ' << format_double(r.triangle.sides.beta) << ' '
      << format_double(r.triangle.sides.gamma) << '\n';
  for (const auto& v : r.triangle.vertices) {
    out << "vertex: " << format_double(v.coords().x()) << ' ' << format_double(v.coords().y()) << '\n';
  }
  out << "method: " << r.diagnostics.method << ", grid " << r.diagnostics.grid << ", sweeps "
      << r.diagnostics.refinement_sweeps << '\n';
  return kPass;
}

// ---- certify ----

int cmd_certify(const std::string& body_path, const std::string& polygon_path, bool json, std::ostream& out,
                std::ostream& err) {
  const ConvexBody body = load_body(body_path);
  const ClosedPolygon poly = load_polygon(polygon_path);
  if (poly.metric() != body.metric()) throw Exit{kInvalidInput, "polygon and body use different metrics"};
  try {
    const TriangleCertificate cert = certify(poly, body);
    std::ostream& human = json ? err : out;
    if (json) out << dump(to_json(cert));
    human << "certified: perimeter " << format_double(cert.perimeter) << " <= " << format_double(cert.bound)
          << " (slack " << format_double(cert.slack) << ", case " << cert.trace.case_tag << ")\n";
    return kPass;
  } catch (const InputError& e) {
    throw Exit{kInvalidInput, e.what()};
  } catch (const CertificationError& e) {
    Json cands = Json::array();
    for (const auto& c : e.candidates()) {
      cands.push_back({{"triple", {std::string(1, c.labels[0]), std::string(1, c.labels[1]),
                                   std::string(1, c.labels[2])}},
                       {"score", c.score}});
    }
    if (json) out << dump(Json{{"error", e.what()}, {"candidates", cands}});
    throw Exit{kCertificationFailed, std::string("certification failed: ") + e.what()};
  } catch (const GeometryError& e) {
    throw Exit{kInvalidInput, e.what()};
  }
}

// ---- search ----

int cmd_search(const std::string& body_path, int n, int trials, long steps, std::uint64_t seed, std::ostream& out,
               std::ostream& err) {
  const ConvexBody body = load_body(body_path);
  require_n(n);
  if (n % 2 == 0) throw Exit{kUsage, "search requires odd n"};
  if (trials < 0 || steps < 0) throw Exit{kUsage, "trials and steps must be nonnegative"};
  try {
    const SearchReport report = verify_no_counterexample(body, n, trials, steps, seed, threads_from_env(), &err);
    Json doc = to_json(report);
    doc["body"] = to_json(body);
    out << dump(doc);
    err << "pass: best " << format_double(report.best_perimeter) << " <= bound " << format_double(report.bound)
        << '\n';
    return kPass;
  } catch (const CounterexampleError& e) {
    out << dump(Json{{"passed", false}, {"error", e.what()}, {"polygon", to_json(e.polygon())}});
    throw Exit{kPropertyViolation, std::string("property violation: ") + e.what()};
  }
}

// ---- construct ----

int cmd_construct(const std::string& body_path, int n, double eps, bool json, std::ostream& out, std::ostream& err) {
  const ConvexBody body = load_body(body_path);
  require_n(n);
  if (!(eps > 0.0)) throw Exit{kUsage, "eps must be positive"};
  std::optional<ClosedPolygon> poly;
  double target = 0.0;
  std::string label;
  try {
    if (n % 2 == 1) {
      const BoundResult bound = compute_bound(body, n);
      poly = near_extremal_odd(body, n, eps, bound);
      target = bound.value;
      label = "triangle bound";
    } else {
      poly = near_extremal_even(body, n, eps);
      target = n * body.diameter();
      label = "even-n diameter bound";
    }
  } catch (const std::exception& e) {
    throw Exit{kInvalidInput, e.what()};
  }
  const double per = perimeter(*poly);
  if (json) {
    Json doc = to_json(*poly);
    doc["perimeter"] = per;
    doc["target"] = target;
    doc["target_label"] = label;
    doc["gap"] = target - per;
    out << dump(doc);
  }
  (json ? err : out) << "constructed " << n << "-gon: perimeter " << format_double(per) << ", " << label << ' '
                     << format_double(target) << '\n';
  if (!json) out << dump(to_json(*poly));
  return kPass;
}

// ---- check-paper ----

struct Sweep {
  std::string name;
  long evaluated = 0;
  long failures = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  Json argmin;
  Json first_failure;

  void record(double margin, Json sample, double tolerance = 0.0) {
    ++evaluated;
    if (margin < min_margin) {
      min_margin = margin;
      argmin = sample;
    }
    if (margin < -tolerance) {
      if (failures == 0) first_failure = std::move(sample);
      ++failures;
    }
  }

  Json to_json() const {
    Json j{{"name", name}, {"evaluated", evaluated}, {"failures", failures}, {"min_margin", min_margin},
           {"argmin", argmin}};
    if (failures > 0) j["first_failure"] = first_failure;
    return j;
  }
};

Point random_poincare(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  for (;;) {
    const Vec2 c(u(rng), u(rng));
    if (c.norm() < radius) return Point::poincare(c);
  }
}

int cmd_check_paper(long samples, std::uint64_t seed, bool json, std::ostream& out, std::ostream& err) {
  if (samples < 1) throw Exit{kUsage, "samples must be at least 1"};
  const PaperCheckSummary summary = check_paper(samples, seed);
  std::ostream& human = json ? err : out;
  for (const auto& c : summary.report["checks"]) {
    human << c["name"].get<std::string>() << ": evaluated " << c["evaluated"].get<long>() << ", failures "
          << c["failures"].get<long>() << ", min margin " << format_double(c["min_margin"].get<double>()) << '\n';
  }
  if (json) out << dump(summary.report);
  if (!summary.passed) {
    for (const auto& c : summary.report["checks"]) {
      if (c["failures"].get<long>() > 0) err << "offending sample (" << c["name"].get<std::string>() << "): "
                                             << c["first_failure"].dump() << '\n';
    }
    throw Exit{kPropertyViolation, "negative margin observed"};
  }
  return kPass;
}

// ---- render ----

int cmd_render(const std::string& body_path, const std::string& polygon_path, const std::string& triangle_path,
               const std::string& output, std::ostream& err) {
  SvgScene scene{load_body(body_path), std::nullopt, std::nullopt};
  if (!polygon_path.empty()) {
    scene.polygon = load_polygon(polygon_path);
    if (scene.polygon->metric() != scene.body.metric()) throw Exit{kInvalidInput, "polygon metric differs from body"};
  }
  if (!triangle_path.empty()) scene.triangle = load_triangle(triangle_path, scene.body.metric());
  const std::string svg = render_svg(scene);
  std::ofstream file(output, std::ios::binary);
  if (!file || !(file << svg) || !file.flush()) throw Exit{kUsage, "cannot write " + output};
  err << "wrote " << output << '\n';
  return kPass;
}

}  // namespace

PaperCheckSummary check_paper(long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  Sweep gap;
  gap.name = "eu_inequality_gap";
  for (long s = 0; s < samples; ++s) {
    for (;;) {
      const double ta = uniform(0.0, 0.5), tc = uniform(1.0, 1.5);
      const double wa = uniform(0.0, 2.0), wc = uniform(wa / 2.0, wa + 1.0);
      if (tc <= 1.0 || std::hypot(wa - wc, ta - tc) >= 1.0) continue;
      gap.record(eu_inequality_gap(ta, wa, tc, wc),
                 {{"theta_a", ta}, {"omega_a", wa}, {"theta_c", tc}, {"omega_c", wc}});
      break;
    }
  }

  Sweep eu_i;
  eu_i.name = "eu_derivative_I";
  Sweep hy_i;
  hy_i.name = "hy_derivative_I";
  for (long s = 0; s < samples; ++s) {
    double tc = 0.0;
    while (tc <= 0.0) tc = uniform(0.0, 5.0);
    const double ta = uniform(0.0, tc / 2.0), wc = uniform(0.0, 5.0);
    eu_i.record(eu_derivative_I(ta, tc, wc), {{"theta_a", ta}, {"theta_c", tc}, {"omega_c", wc}});
  }
  for (long s = 0; s < samples; ++s) {
    double tc = 0.0;
    while (tc <= 0.0) tc = uniform(0.0, 5.0);
    const double ta = uniform(0.0, tc / 2.0), wc = uniform(0.0, 5.0);
    hy_i.record(hy_derivative_I(ta, tc, wc), {{"theta_a", ta}, {"theta_c", tc}, {"omega_c", wc}});
  }

  // Along a hypercycle, distance to x grows with the arc distance from the
  // foot of x. Margin: increase of the distance toward the farther point.
  Sweep mono;
  mono.name = "hypercycle_monotonicity";
  for (long s = 0; s < samples; ++s) {
    const Point p1 = random_poincare(rng, 0.8);
    Point p2 = random_poincare(rng, 0.8);
    while (distance(p1, p2) < 1e-3) p2 = random_poincare(rng, 0.8);
    const Hypercycle h{Geodesic(p1, p2), uniform(-1.5, 1.5)};
    const Point x = random_poincare(rng, 0.9);
    const double u1 = uniform(-2.0, 2.0), u2 = uniform(-2.0, 2.0);
    const Point y1 = hypercycle_point(h, u1);
    const Point y2 = hypercycle_point(h, u2);
    const double ux = line_coordinate(x, h.reference);
    const double d1 = distance(x, y1), d2 = distance(x, y2);
    double margin = std::abs(u2 - ux) >= std::abs(u1 - ux) ? d2 - d1 : d1 - d2;
    if (!hypercycle_distance_monotone_check(x, h, y1, y2)) margin = std::min(margin, -1.0);
    mono.record(margin,
                {{"x", to_json(x)},
                 {"reference", Json::array({to_json(p1), to_json(p2)})},
                 {"offset", h.signed_offset},
                 {"u1", u1},
                 {"u2", u2}},
                tol::kProperty);
  }

  // Exhaustive sign patterns of zeta, then random theta sequences.
  Sweep triple;
  triple.name = "monotone_triple";
  for (int n : {5, 7, 9}) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<double> zeta(n);
      for (int i = 0; i < n; ++i) zeta[i] = (mask >> i) & 1u ? 1.0 : -1.0;
      const auto j = first_same_sign_pair(zeta);
      triple.record(j ? zeta[*j - 1] * zeta[*j % n] : -1.0, {{"n", n}, {"signs", mask}});
    }
    for (long s = 0; s < samples; ++s) {
      std::vector<double> theta(n);
      for (double& t : theta) t = uniform(-1.0, 1.0);
      const std::size_t j = find_monotone_triple(theta);
      const auto zeta = zeta_sequence(theta);
      triple.record(zeta[j - 1] * zeta[j % n] >= 0.0 ? 0.0 : -1.0, {{"n", n}, {"theta", theta}});
    }
  }

  PaperCheckSummary summary;
  Json checks = Json::array();
  for (const Sweep* sw : {&gap, &eu_i, &hy_i, &mono, &triple}) {
    checks.push_back(sw->to_json());
    summary.passed = summary.passed && sw->failures == 0;
  }
  summary.report = Json{{"samples", samples}, {"seed", seed}, {"passed", summary.passed}, {"checks", checks}};
  return summary;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perimeter bounds for simple polygons in convex bodies", "perimax"};
  app.require_subcommand(1, 1);

  std::string body_path, polygon_path, triangle_path, output;
  int n = 0;
  std::optional<int> grid;
  bool json = false, plain = false;
  int trials = 0;
  long steps = 0;
  std::uint64_t seed = 1;
  long samples = 100000;
  double eps = 1e-4;

  auto* bound = app.add_subcommand("bound", "Sharp perimeter bound for simple n-gons in a body");
  bound->add_option("--body", body_path, "Body JSON file")->required();
  bound->add_option("--n", n, "Number of vertices")->required();
  bound->add_option("--grid", grid, "Search grid resolution");
  auto* bound_json = bound->add_flag("--json", json, "Emit JSON on stdout");
  bound->add_flag("--plain", plain, "Print the value only")->excludes(bound_json);

  auto* cert = app.add_subcommand("certify", "Certify a polygon against the bound");
  cert->add_option("--body", body_path, "Body JSON file")->required();
  cert->add_option("--polygon", polygon_path, "Polygon JSON file")->required();
  cert->add_flag("--json", json, "Emit JSON on stdout");

  auto* search = app.add_subcommand("search", "Randomized search for a counterexample");
  search->add_option("--body", body_path, "Body JSON file")->required();
  search->add_option("--n", n, "Number of vertices (odd)")->required();
  search->add_option("--trials", trials, "Independent restarts")->required();
  search->add_option("--steps", steps, "Hill-climbing steps per restart")->required();
  search->add_option("--seed", seed, "Base seed")->required();
  search->add_flag("--json", json, "Accepted for symmetry; output is always JSON");

  auto* construct = app.add_subcommand("construct", "Near-extremal zigzag polygon");
  construct->add_option("--body", body_path, "Body JSON file")->required();
  construct->add_option("--n", n, "Number of vertices")->required();
  construct->add_option("--eps", eps, "Offset step")->capture_default_str();
  construct->add_flag("--json", json, "Emit JSON on stdout");

  auto* paper = app.add_subcommand("check-paper", "Randomized sweeps of the key inequalities");
  paper->add_option("--samples", samples, "Samples per sweep")->capture_default_str();
  paper->add_option("--seed", seed, "Seed")->capture_default_str();
  paper->add_flag("--json", json, "Emit JSON on stdout");

  auto* render = app.add_subcommand("render", "Write an SVG figure");
  render->add_option("--body", body_path, "Body JSON file")->required();
  render->add_option("--polygon", polygon_path, "Polygon JSON file");
  render->add_option("--triangle", triangle_path, "Triangle (polygon JSON or a document with \"triangle\")");
  render->add_option("-o,--output", output, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*bound) return cmd_bound(body_path, n, grid, json, plain, out, err);
    if (*cert) return cmd_certify(body_path, polygon_path, json, out, err);
    if (*search) return cmd_search(body_path, n, trials, steps, seed, out, err);
    if (*construct) return cmd_construct(body_path, n, eps, json, out, err);
    if (*paper) return cmd_check_paper(samples, seed, json, out, err);
    if (*render) return cmd_render(body_path, polygon_path, triangle_path, output, err);
  } catch (const Exit& e) {
    err << e.message << '\n';
    return e.code;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kUsage;
}

}  // namespace perimax::cli

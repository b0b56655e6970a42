#include "perimax/search_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "perimax/certificate.hpp"
#include "perimax/tolerance.hpp"

namespace perimax {

namespace {

constexpr int kGeneratorRounds = 50;
constexpr std::uint64_t kClimbStream = 0x9E3779B97F4A7C15ull;

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Simplicity after replacing vertex i: only edges i-1 and i changed.
bool simple_after_move(const ClosedPolygon& poly, std::size_t i) {
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k != i && distance(poly[k], poly[i]) <= tol::kPredicate) return false;
  }
  const std::size_t before = (i + n - 1) % n;
  for (const std::size_t e : {before, i}) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == e || (e == i && k == before)) continue;
      if (edges_conflict(poly, e, k)) return false;
    }
  }
  return true;
}

Point clamp_into(const ConvexBody& body, const Point& from, const Vec2& target) {
  const Metric m = body.metric();
  if (m == Metric::Euclidean || target.squaredNorm() < 1.0) {
    const Point candidate = Point::from_linear(m, target);
    if (body.contains(candidate)) return candidate;
  }
  // Walk along the chart ray; in the Klein chart this is the geodesic ray.
  const Vec2 start = from.linear();
  Vec2 step = target - start;
  if (m == Metric::Hyperbolic) {
    const double room = 0.5 * (1.0 - start.norm());
    if (step.norm() > room) step *= room / step.norm();
  }
  return body.ray_exit(from, Point::from_linear(m, start + step));
}

}  // namespace

ClosedPolygon random_simple_polygon(const ConvexBody& body, int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  std::mt19937_64 rng(seed);
  for (int round = 0; round < kGeneratorRounds; ++round) {
    std::vector<Point> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back(body.sample(rng));
    std::shuffle(pts.begin(), pts.end(), rng);
    try {
      ClosedPolygon poly = uncross(ClosedPolygon(std::move(pts)), 20 * n * n);
      if (contained_in(poly, body)) return poly;
    } catch (const UncrossError&) {
      // Fresh points next round.
    }
  }
  throw std::runtime_error("random_simple_polygon: generator rounds exhausted");
}

ClosedPolygon local_search_max_perimeter(const ClosedPolygon& start, const ConvexBody& body, long steps,
                                         double step_scale, std::uint64_t seed) {
  std::vector<Point> current = start.vertices();
  const std::size_t n = current.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long halve_every = std::max(1L, steps / 10);
  long rejections = 0;
  double scale = step_scale;

  for (long step = 0; step < steps; ++step) {
    const std::size_t i = pick(rng);
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const double radius = scale * unit(rng);
    const Point& old = current[i];
    const Vec2 target = old.linear() + radius * Vec2(std::cos(angle), std::sin(angle));
    bool accepted = false;
    if (radius > 0.0) {
      Point moved = clamp_into(body, old, target);
      const Point& prev = current[(i + n - 1) % n];
      const Point& next = current[(i + 1) % n];
      const double gain = distance(prev, moved) + distance(moved, next) - distance(prev, old) - distance(old, next);
      if (gain > 0.0) {
        std::vector<Point> trial = current;
        trial[i] = moved;
        ClosedPolygon candidate(std::move(trial));
        if (simple_after_move(candidate, i)) {
          current = candidate.vertices();
          accepted = true;
        }
      }
    }
    if (!accepted && ++rejections >= halve_every) {
      scale *= 0.5;
      rejections = 0;
    }
  }
  return ClosedPolygon(std::move(current));
}

ClosedPolygon near_extremal_odd(const ConvexBody& body, int n, double eps) {
  return near_extremal_odd(body, n, eps, compute_bound(body, n));
}

ClosedPolygon near_extremal_odd(const ConvexBody& body, int n, double eps, const BoundResult& bound) {
  require_odd_n(n);
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const auto& tri = bound.triangle;
  // Longest side [x, y]; z is the remaining vertex.
  int longest = 0;
  for (int e = 1; e < 3; ++e) {
    if (tri.edge_lengths[e] > tri.edge_lengths[longest]) longest = e;
  }
  const Point& x = tri.vertices[longest];
  const Point& y = tri.vertices[(longest + 1) % 3];
  const Point& z = tri.vertices[(longest + 2) % 3];
  if (n == 3) return ClosedPolygon({z, x, y});

  const Metric m = body.metric();
  const Point centroid =
      Point::from_linear(m, (x.linear() + y.linear() + z.linear()) / 3.0);
  const int pairs = (n - 1) / 2;
  if (pairs * eps >= std::min(distance(x, centroid), distance(y, centroid))) {
    throw std::invalid_argument("eps too large for this body; try a smaller eps");
  }
  std::vector<Point> cycle{z};
  for (int k = 0; k < pairs; ++k) {
    cycle.push_back(point_along(x, centroid, (k + 1) * eps));
    cycle.push_back(point_along(y, centroid, (k + 1) * eps));
  }
  ClosedPolygon poly(std::move(cycle));
  if (!is_simple(poly) || !contained_in(poly, body)) {
    throw std::runtime_error("zigzag construction failed at eps=" + format_number(eps) + "; try a smaller eps");
  }
  return poly;
}

ClosedPolygon near_extremal_even(const ConvexBody& body, int n, double eps) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 4");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const int pairs = n / 2;
  const auto [d1, d2] = body.diameter_pair();
  if ((pairs + 2) * eps >= distance(d1, d2) / 2.0) {
    throw std::invalid_argument("eps too large for this body; try a smaller eps");
  }
  const Geodesic axis(d1, d2);
  const Point base = point_along(d2, d1, 2.0 * eps);
  // Upper fan: heights decrease along the cycle; one point below the axis
  // closes it.
  std::vector<double> heights;
  for (int j = 0; j + 1 < pairs; ++j) heights.push_back(eps * (pairs - 1 - j) / (pairs - 1));
  heights.push_back(-eps);
  for (int attempt = 0; attempt < 30; ++attempt) {
    std::vector<Point> cycle;
    for (int k = 0; k < pairs; ++k) {
      cycle.push_back(point_along(d1, d2, (k + 1) * eps));
      cycle.push_back(exp_map(base, axis.normal(), heights[k]));
    }
    ClosedPolygon poly(std::move(cycle));
    if (contained_in(poly, body)) {
      if (!is_simple(poly)) break;
      return poly;
    }
    for (double& h : heights) h *= 0.5;
  }
  throw std::runtime_error("diameter zigzag failed at eps=" + format_number(eps) + "; try a smaller eps");
}

SearchReport verify_no_counterexample(const ConvexBody& body, int n, int trials, long steps,
                                      std::uint64_t seed, unsigned threads, std::ostream* progress) {
  require_odd_n(n);
  if (trials < 0) throw std::invalid_argument("trials must be nonnegative");
  SearchReport report;
  report.n = n;
  report.trials = trials;
  report.steps = steps;
  report.seed = seed;
  if (trials == 0) return report;

  const BoundResult bound = compute_bound(body, n);
  report.bound = bound.value;
  report.bound_method = bound.diagnostics.method;
  const double tolerance = tol::kProperty * std::max(1.0, bound.value);
  const double step_scale = body.diameter();
  const auto [lo, hi] = body.linear_bounds();
  const double chart_scale = body.metric() == Metric::Euclidean ? step_scale : (hi - lo).maxCoeff();

  std::vector<std::optional<ClosedPolygon>> finals(trials);
  std::vector<RestartRecord> records(trials);
  std::vector<std::string> failures(trials);
  std::mutex io;

  const auto run_one = [&](int i) {
    RestartRecord& rec = records[i];
    rec.index = i;
    rec.seed = seed + static_cast<std::uint64_t>(i);
    try {
      const ClosedPolygon start = random_simple_polygon(body, n, rec.seed);
      rec.start_perimeter = perimeter(start);
      ClosedPolygon best = local_search_max_perimeter(start, body, steps, chart_scale, rec.seed + kClimbStream);
      rec.best_perimeter = perimeter(best);
      const TriangleCertificate cert = certify(best, body);
      rec.certificate_bound = cert.bound;
      rec.certificate_slack = cert.slack;
      finals[i] = std::move(best);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
    if (progress) {
      std::lock_guard lock(io);
      *progress << "restart=" << i << " best=" << format_number(rec.best_perimeter) << '\n';
    }
  };

  threads = std::clamp(threads, 1u, static_cast<unsigned>(trials));
  if (threads == 1) {
    for (int i = 0; i < trials; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (int i = next++; i < trials; i = next++) run_one(i);
      });
    }
    for (auto& t : workers) t.join();
  }

  for (int i = 0; i < trials; ++i) {
    if (!finals[i]) {
      throw CounterexampleError("restart " + std::to_string(i) + " failed certification: " + failures[i],
                                random_simple_polygon(body, n, records[i].seed));
    }
    const RestartRecord& rec = records[i];
    if (rec.best_perimeter > report.best_perimeter || report.best_restart < 0) {
      report.best_perimeter = rec.best_perimeter;
      report.best_restart = i;
      report.best_polygon = finals[i];
    }
    report.min_certificate_slack =
        report.certified == 0 ? rec.certificate_slack : std::min(report.min_certificate_slack, rec.certificate_slack);
    ++report.certified;
  }
  report.restarts = std::move(records);
  report.max_violation = report.best_perimeter - report.bound;
  if (report.max_violation > tolerance) {
    throw CounterexampleError("perimeter " + format_number(report.best_perimeter) + " exceeds bound " +
                                  format_number(report.bound),
                              *report.best_polygon);
  }
  return report;
}

unsigned threads_from_env() {
  const char* raw = std::getenv("PERIMAX_THREADS");
  if (raw == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || v < 1) return 1;
  return static_cast<unsigned>(std::min(v, 256L));
}

}  // namespace perimax

#include "perimax/triangle_bound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include "perimax/tolerance.hpp"

namespace perimax {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Golden-section maximization of f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

struct RefineOutcome {
  int sweeps = 0;
  double last_move = 0.0;
};

// Cyclic pattern search: golden-section along each fixed direction over a
// bracket of half-width `width`, accepting strict improvements only.
template <std::size_t Dim>
RefineOutcome refine(std::array<double, Dim>& x, const std::function<double(const std::array<double, Dim>&)>& f,
                     const std::vector<std::array<double, Dim>>& directions, double width, int max_sweeps) {
  RefineOutcome out;
  double best = f(x);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double moved = 0.0;
    for (const auto& dir : directions) {
      const auto line = [&](double h) {
        std::array<double, Dim> y = x;
        for (std::size_t k = 0; k < Dim; ++k) y[k] += h * dir[k];
        return f(y);
      };
      const double h = golden_max(line, -width, width, 1e-13);
      const double value = line(h);
      if (value > best) {
        best = value;
        for (std::size_t k = 0; k < Dim; ++k) x[k] += h * dir[k];
        double step = 0.0;
        for (std::size_t k = 0; k < Dim; ++k) step = std::max(step, std::abs(h * dir[k]));
        moved = std::max(moved, step);
      }
    }
    out.sweeps = sweep + 1;
    out.last_move = moved;
    if (moved < 1e-10) break;
    // Shrink the bracket with the step size once the search settles.
    width = std::clamp(4.0 * moved, 1e-9, width);
  }
  return out;
}

struct GridBest {
  double score = kNegInf;
  std::array<int, 3> idx{0, 0, 0};

  void offer(double s, const std::array<int, 3>& t) {
    if (s > score || (s == score && t < idx)) {
      score = s;
      idx = t;
    }
  }
};

}  // namespace

SortedSides sort_sides(double a, double b, double c) {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  return {s[0], s[1], s[2]};
}

void require_odd_n(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("n must be odd and >= 3");
}

double triangle_score(int n, const SortedSides& s) {
  require_odd_n(n);
  return (n - 2) * s.alpha + s.beta + s.gamma;
}

double triangle_score(int n, double a, double b, double c) { return triangle_score(n, sort_sides(a, b, c)); }

InscribedTriangle make_triangle(const std::array<Point, 3>& v) {
  InscribedTriangle t{v, {}, {distance(v[0], v[1]), distance(v[1], v[2]), distance(v[2], v[0])}, {}};
  t.sides = sort_sides(t.edge_lengths[0], t.edge_lengths[1], t.edge_lengths[2]);
  return t;
}

BoundResult optimize_bound(const ConvexBody& body, int n, int grid, int refine_iters, unsigned threads) {
  require_odd_n(n);
  if (grid < 24) throw std::invalid_argument("grid must be at least 24");
  std::vector<Point> pts;
  pts.reserve(grid);
  for (int i = 0; i < grid; ++i) pts.push_back(body.boundary_point(static_cast<double>(i) / grid));
  std::vector<double> dist(static_cast<std::size_t>(grid) * grid, 0.0);
  for (int i = 0; i < grid; ++i) {
    for (int j = i + 1; j < grid; ++j) {
      dist[i * grid + j] = dist[j * grid + i] = distance(pts[i], pts[j]);
    }
  }

  const auto scan = [&](int i_begin, int i_end, GridBest& best) {
    for (int i = i_begin; i < i_end; ++i) {
      for (int j = i + 1; j < grid; ++j) {
        const double dij = dist[i * grid + j];
        for (int k = j + 1; k < grid; ++k) {
          best.offer(triangle_score(n, dij, dist[j * grid + k], dist[i * grid + k]), {i, j, k});
        }
      }
    }
  };

  GridBest best;
  threads = std::max(1u, threads);
  if (threads == 1) {
    scan(0, grid, best);
  } else {
    std::vector<GridBest> partial(threads);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (int i = static_cast<int>(w); i < grid; i += static_cast<int>(threads)) scan(i, i + 1, partial[w]);
      });
    }
    for (auto& th : workers) th.join();
    for (const auto& p : partial) best.offer(p.score, p.idx);
  }

  std::array<double, 3> t{};
  for (int k = 0; k < 3; ++k) t[k] = static_cast<double>(best.idx[k]) / grid;
  const std::function<double(const std::array<double, 3>&)> objective = [&](const std::array<double, 3>& p) {
    const Point a = body.boundary_point(p[0]);
    const Point b = body.boundary_point(p[1]);
    const Point c = body.boundary_point(p[2]);
    return triangle_score(n, distance(a, b), distance(b, c), distance(c, a));
  };
  const std::vector<std::array<double, 3>> directions{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0},
                                                      {0, 1, 1}, {1, 0, 1}, {1, -1, 0}, {0, 1, -1},
                                                      {1, 0, -1}};
  const RefineOutcome outcome = refine<3>(t, objective, directions, 1.0 / grid, refine_iters);
  for (double& p : t) p -= std::floor(p);

  BoundResult result{n,
                     make_triangle({body.boundary_point(t[0]), body.boundary_point(t[1]), body.boundary_point(t[2])}),
                     0.0,
                     {"boundary-grid", grid, outcome.sweeps, outcome.last_move}};
  result.triangle.params = t;
  result.value = triangle_score(n, result.triangle.sides);
  return result;
}

BoundResult disk_bound_1d(Metric metric, double radius, int n, int grid, int refine_iters) {
  require_odd_n(n);
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (grid < 24) throw std::invalid_argument("grid must be at least 24");
  const double sinh_r = std::sinh(radius);
  const auto chord = [&](double angle) {
    const double half = std::sin(0.5 * angle);
    return metric == Metric::Euclidean ? 2.0 * radius * half : 2.0 * std::asinh(sinh_r * half);
  };
  const std::function<double(const std::array<double, 2>&)> objective = [&](const std::array<double, 2>& a) {
    const double third = kTwoPi - a[0] - a[1];
    if (a[0] < 0.0 || a[1] < 0.0 || third < 0.0) return kNegInf;
    return triangle_score(n, chord(a[0]), chord(a[1]), chord(third));
  };

  GridBest best;
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; i + j <= grid; ++j) {
      const std::array<double, 2> a{kTwoPi * i / grid, kTwoPi * j / grid};
      best.offer(objective(a), {i, j, 0});
    }
  }
  std::array<double, 2> angles{kTwoPi * best.idx[0] / grid, kTwoPi * best.idx[1] / grid};
  const std::vector<std::array<double, 2>> directions{{1, 0}, {0, 1}, {1, -1}, {1, 1}};
  const RefineOutcome outcome = refine<2>(angles, objective, directions, kTwoPi / grid, refine_iters);

  const ConvexBody disk = ConvexBody::disk(Point::from_coords(metric, Vec2::Zero()), radius);
  const std::array<double, 3> params{0.0, angles[0] / kTwoPi, (angles[0] + angles[1]) / kTwoPi};
  BoundResult result{
      n,
      make_triangle({disk.boundary_point(params[0]), disk.boundary_point(params[1]), disk.boundary_point(params[2])}),
      0.0,
      {"disk-central-angles", grid, outcome.sweeps, outcome.last_move}};
  result.triangle.params = params;
  result.value = triangle_score(n, result.triangle.sides);
  return result;
}

BoundResult compute_bound(const ConvexBody& body, int n, std::optional<int> grid) {
  if (!body.is_disk()) return optimize_bound(body, n, grid.value_or(kDefaultBodyGrid));
  BoundResult r = disk_bound_1d(body.metric(), body.as_disk().radius, n, grid.value_or(kDefaultDiskGrid));
  const Motion to_center = Motion::to_origin(body.as_disk().center).inverse();
  std::array<Point, 3> moved = r.triangle.vertices;
  for (auto& v : moved) v = to_center.apply(v);
  const auto params = r.triangle.params;
  r.triangle = make_triangle(moved);
  r.triangle.params = params;
  r.value = triangle_score(n, r.triangle.sides);
  return r;
}

InscribedTriangle inscribe_push(const ConvexBody& body, const std::array<Point, 3>& triangle) {
  for (const auto& v : triangle) {
    if (!body.contains(v)) throw GeometryError("triangle vertex outside body");
  }
  const InscribedTriangle before = make_triangle(triangle);
  std::array<Point, 3> t = triangle;
  const Metric m = body.metric();
  for (int k = 0; k < 3; ++k) {
    Point& v = t[k];
    if (body.on_boundary(v, tol::kIncidence)) continue;
    const Point& u = t[(k + 1) % 3];
    const Point& w = t[(k + 2) % 3];
    const bool u_apart = distance(u, v) > tol::kPredicate;
    const bool w_apart = distance(w, v) > tol::kPredicate;
    Vec3 dir = Vec3::Zero();
    if (u_apart) dir -= unit_tangent_toward(v, u);
    if (w_apart) dir -= unit_tangent_toward(v, w);
    double len2 = tangent_dot(m, dir, dir);
    if (len2 <= 1e-20) {
      // v lies on the geodesic between u and w: leave it orthogonally.
      if (u_apart) {
        dir = Geodesic(v, u).normal();
      } else if (w_apart) {
        dir = Geodesic(v, w).normal();
      } else {
        const Point b0 = body.boundary_point(0.0);
        dir = unit_tangent_toward(v, distance(b0, v) > tol::kPredicate ? b0 : body.boundary_point(0.5));
      }
      len2 = tangent_dot(m, dir, dir);
    }
    dir /= std::sqrt(len2);
    v = body.ray_exit(v, exp_map(v, dir, 1.0));
  }
  InscribedTriangle after = make_triangle(t);
  for (int e = 0; e < 3; ++e) {
    if (after.edge_lengths[e] < before.edge_lengths[e] - tol::kIncidence) {
      throw std::logic_error("inscribe_push shortened a side");
    }
  }
  for (const auto& v : after.vertices) {
    if (!body.on_boundary(v, tol::kIncidence)) throw std::logic_error("inscribe_push left a vertex inside");
  }
  return after;
}

}  // namespace perimax

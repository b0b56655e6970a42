#include "perimax/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "perimax/tolerance.hpp"

namespace perimax {

namespace {

constexpr std::array<char, 5> kLabels{'p', 'q', 'a', 'b', 'c'};

double certificate_tolerance(double perimeter) { return tol::kProperty * std::max(1.0, perimeter); }

std::string case_tag_for(const CandidateTriple& t) {
  return std::string{t.labels[0], t.labels[1]} + "-multiple-via-" + t.labels[2];
}

void require_domain(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

NormalizedPolygon normalize(const ClosedPolygon& p) {
  const std::size_t n = p.size();
  if (n % 2 == 0) throw InputError("n must be odd");
  if (const auto rep = is_simple(p); !rep) {
    throw InputError("not simple: edges " + std::to_string(rep.witness->first) + " and " +
                     std::to_string(rep.witness->second) + " intersect");
  }
  std::size_t longest = 0;
  double rho = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double len = distance(p[i], p[i + 1]);
    if (len > rho) {
      rho = len;
      longest = i;
    }
  }
  std::vector<Point> relabeled;
  relabeled.reserve(n);
  for (std::size_t i = 0; i < n; ++i) relabeled.push_back(p[longest + i]);

  const Metric m = p.metric();
  Motion motion = Motion::to_origin(relabeled[0]);
  const Vec2 dir = motion.apply(relabeled[1]).coords();
  const double turn = std::numbers::pi / 2.0 - std::atan2(dir.y(), dir.x());
  if (m == Metric::Euclidean) {
    motion = Motion::euclidean(turn, 1.0 / rho, Vec2::Zero()).compose(motion);
  } else {
    motion = Motion::rotation(m, turn).compose(motion);
  }
  std::vector<Point> moved;
  moved.reserve(n);
  for (const auto& v : relabeled) moved.push_back(motion.apply(v));
  return NormalizedPolygon{ClosedPolygon(std::move(moved)), motion, longest, rho};
}

std::vector<double> projection_coordinates(const ClosedPolygon& normalized) {
  const Geodesic line(normalized[0], normalized[1]);
  std::vector<double> theta;
  theta.reserve(normalized.size());
  for (const auto& v : normalized.vertices()) theta.push_back(line_coordinate(v, line));
  return theta;
}

std::vector<double> zeta_sequence(std::span<const double> theta) {
  const std::size_t n = theta.size();
  std::vector<double> zeta(n);
  for (std::size_t i = 0; i < n; ++i) zeta[i] = theta[(i + 1) % n] - theta[i];
  return zeta;
}

std::optional<std::size_t> first_same_sign_pair(std::span<const double> zeta) {
  const std::size_t n = zeta.size();
  for (std::size_t j = 1; j <= n; ++j) {
    const double prev = zeta[j - 1];
    const double cur = zeta[j % n];
    if ((prev >= 0.0 && cur >= 0.0) || (prev <= 0.0 && cur <= 0.0)) return j;
  }
  return std::nullopt;
}

std::size_t find_monotone_triple(std::span<const double> theta) {
  if (theta.size() < 3 || theta.size() % 2 == 0) throw InputError("parity argument requires odd n");
  const auto zeta = zeta_sequence(theta);
  const auto j = first_same_sign_pair(zeta);
  if (!j) throw std::logic_error("odd cyclic sequence without a same-sign pair");
  return *j;
}

std::vector<CandidateTriple> candidate_triples(const Point& p, const Point& q, const Point& a,
                                               const Point& b, const Point& c, int n) {
  const std::array<const Point*, 5> pts{&p, &q, &a, &b, &c};
  std::vector<CandidateTriple> out;
  out.reserve(10);
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      for (int k = j + 1; k < 5; ++k) {
        const double dij = distance(*pts[i], *pts[j]);
        const double djk = distance(*pts[j], *pts[k]);
        const double dik = distance(*pts[i], *pts[k]);
        CandidateTriple t;
        t.sides = sort_sides(dij, djk, dik);
        t.score = triangle_score(n, t.sides);
        // Longest side first: (i,j), (j,k) or (i,k); ties keep that order.
        if (dij >= djk && dij >= dik) {
          t.labels = {kLabels[i], kLabels[j], kLabels[k]};
        } else if (djk >= dik) {
          t.labels = {kLabels[j], kLabels[k], kLabels[i]};
        } else {
          t.labels = {kLabels[i], kLabels[k], kLabels[j]};
        }
        out.push_back(t);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.score < y.score; });
  return out;
}

TriangleCertificate certify(const ClosedPolygon& poly, const ConvexBody& body) {
  if (poly.metric() != body.metric()) throw InputError("metric mismatch");
  const std::size_t n = poly.size();
  if (n % 2 == 0) throw InputError("n must be odd");
  const NormalizedPolygon norm = normalize(poly);
  if (!contained_in(poly, body)) throw InputError("polygon not contained in body");

  CertificateTrace trace;
  trace.longest_edge = norm.longest_edge;
  trace.normalization = norm.motion;
  trace.scale = norm.motion.scale();
  trace.rho = norm.rho;
  trace.theta = projection_coordinates(norm.polygon);
  trace.zeta = zeta_sequence(trace.theta);
  trace.j = find_monotone_triple(trace.theta);

  const auto input_index = [&](std::size_t relabeled) { return (norm.longest_edge + relabeled) % n; };
  std::size_t ia = trace.j - 1, ib = trace.j % n, ic = (trace.j + 1) % n;
  if (trace.theta[ia] > trace.theta[ic]) {
    std::swap(ia, ic);
    trace.flipped = true;
  }
  trace.labels = {input_index(0), input_index(1), input_index(ia), input_index(ib), input_index(ic)};
  const auto& v = poly.vertices();
  const Point& p = v[trace.labels[0]];
  const Point& q = v[trace.labels[1]];
  const Point& a = v[trace.labels[2]];
  const Point& b = v[trace.labels[3]];
  const Point& c = v[trace.labels[4]];

  const int n_int = static_cast<int>(n);
  const double perim = perimeter(poly);
  const double tolerance = certificate_tolerance(perim);
  trace.candidates = candidate_triples(p, q, a, b, c, n_int);

  const auto label_point = [&](char label) -> const Point& {
    switch (label) {
      case 'p': return p;
      case 'q': return q;
      case 'a': return a;
      case 'b': return b;
      default: return c;
    }
  };
  const auto is_abc = [](const CandidateTriple& t) {
    auto l = t.labels;
    std::sort(l.begin(), l.end());
    return l == std::array<char, 3>{'a', 'b', 'c'};
  };

  std::optional<CandidateTriple> chosen;
  if (distance(a, c) >= distance(p, q)) {
    const auto it = std::find_if(trace.candidates.begin(), trace.candidates.end(), is_abc);
    if (it->score >= perim - tolerance) {
      chosen = *it;
      trace.case_tag = "long-ac";
    }
  }
  if (!chosen) {
    for (const auto& t : trace.candidates) {
      if (t.score >= perim - tolerance) {
        chosen = t;
        trace.case_tag = case_tag_for(t);
        break;
      }
    }
  }
  if (!chosen) throw CertificationError("certificate search failed", trace.candidates);
  trace.winner = *chosen;

  const std::array<Point, 3> tri{label_point(chosen->labels[0]), label_point(chosen->labels[1]),
                                 label_point(chosen->labels[2])};
  TriangleCertificate cert{inscribe_push(body, tri), 0.0, 0.0, 0.0, {}};
  cert.bound = triangle_score(n_int, cert.triangle.sides);
  cert.perimeter = perim;
  cert.slack = cert.bound - perim;
  if (cert.slack < -tolerance) throw CertificationError("pushed triangle no longer dominates", trace.candidates);
  cert.trace = std::move(trace);
  return cert;
}

double eu_inequality_gap(double theta_a, double omega_a, double theta_c, double omega_c) {
  require_domain(theta_a >= 0.0 && theta_a <= 0.5, "theta_a must lie in [0, 1/2]");
  require_domain(theta_c > 1.0, "theta_c must exceed 1");
  require_domain(omega_a >= 0.0 && omega_c >= 0.0, "omega_a and omega_c must be nonnegative");
  require_domain(omega_c >= omega_a / 2.0, "omega_c must be at least omega_a / 2");
  const double ac = std::hypot(omega_a - omega_c, theta_a - theta_c);
  require_domain(ac < 1.0, "dist(a, c) must be below 1");
  const double lhs = 5.0 + omega_a + std::hypot(omega_c, theta_c - theta_a);
  const double rhs = 5.0 * std::hypot(omega_c, theta_c) + std::hypot(omega_a, theta_a) + ac;
  return rhs - lhs;
}

double eu_derivative_I(double theta_a, double theta_c, double omega_c) {
  require_domain(theta_c > 0.0, "theta_c must be positive");
  require_domain(theta_a >= 0.0 && theta_a <= theta_c / 2.0, "theta_a must lie in [0, theta_c / 2]");
  require_domain(omega_c >= 0.0, "omega_c must be nonnegative");
  if (omega_c == 0.0) return 0.0;
  return 5.0 * omega_c / std::hypot(omega_c, theta_c) - 2.0 * omega_c / std::hypot(omega_c, theta_c - theta_a);
}

double hy_derivative_I(double theta_a, double theta_c, double omega_c) {
  require_domain(theta_c > 0.0, "theta_c must be positive");
  require_domain(theta_a >= 0.0 && theta_a <= theta_c / 2.0, "theta_a must lie in [0, theta_c / 2]");
  require_domain(omega_c >= 0.0, "omega_c must be nonnegative");
  if (omega_c == 0.0) return 0.0;
  const double sh = std::sinh(omega_c);
  const double ch2 = std::cosh(omega_c) * std::cosh(omega_c);
  const auto term = [&](double theta) {
    const double x = std::cosh(theta);
    const double radicand = x * x * ch2 - 1.0;
    return radicand > 0.0 ? x * sh / std::sqrt(radicand) : 0.0;
  };
  return 5.0 * term(theta_c) - 2.0 * term(theta_c - theta_a);
}

Case1Domination hy_case1_domination(const Point& p, const Point& q, const Point& a, const Point& b,
                                    const Point& c) {
  if (p.metric() != Metric::Hyperbolic) throw InputError("hyperbolic metric required");
  for (const Point* x : {&q, &a, &b, &c}) require_same_metric(p, *x);
  const double rho = distance(p, q);
  if (!(distance(a, c) < rho)) throw InputError("hypothesis failed: dist(a,c) < dist(p,q)");
  const Geodesic base(p, q);
  const double sa = signed_distance(a, base), sb = signed_distance(b, base), sc = signed_distance(c, base);
  const bool upper = sa >= -tol::kIncidence && sb >= -tol::kIncidence && sc >= -tol::kIncidence;
  const bool lower = sa <= tol::kIncidence && sb <= tol::kIncidence && sc <= tol::kIncidence;
  if (!upper && !lower) throw InputError("hypothesis failed: a, b, c in one closed half-plane of L(p,q)");
  const double ta = line_coordinate(a, base), tb = line_coordinate(b, base), tc = line_coordinate(c, base);
  if (!(ta <= tb + tol::kIncidence && tb <= tc + tol::kIncidence)) {
    throw InputError("hypothesis failed: projection of b between those of a and c, a first");
  }
  if (ta < -tol::kIncidence) throw InputError("hypothesis failed: a, b, c off the strip side beyond p");
  if (tc > rho + tol::kIncidence) throw InputError("hypothesis failed: c in the strip S(p,q)");
  const std::array<Point, 4> hull{orthogonal_project(a, base), orthogonal_project(c, base), a, c};
  if (in_convex_hull(b, hull)) throw InputError("hypothesis failed: b outside conv{p_a, p_c, a, c}");
  if (distance(a, b) <= distance(p, b)) return Case1Domination::AviaP;
  if (distance(b, c) <= distance(b, q)) return Case1Domination::CviaQ;
  return Case1Domination::Neither;
}

std::string_view to_string(Case1Domination d) {
  switch (d) {
    case Case1Domination::AviaP: return "AviaP";
    case Case1Domination::CviaQ: return "CviaQ";
    default: return "Neither";
  }
}

}  // namespace perimax

#pragma once

// Certificates for the perimeter bound: for a simple n-gon P (n odd) inside a
// convex body, an inscribed triangle whose score (n-2)a + b + c dominates
// perim P. The triangle is found among the vertex triples of five labeled
// vertices of P:
//   p, q  the endpoints of a longest edge,
//   a, b, c  three consecutive vertices whose projections onto the line
//            L(p, q) are monotone.
// The numeric verifiers at the bottom evaluate the inequalities that the
// correctness argument for this construction rests on.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "perimax/convex_body.hpp"
#include "perimax/metric_plane.hpp"
#include "perimax/simple_polygon.hpp"
#include "perimax/triangle_bound.hpp"

namespace perimax {

/// Rejected input (non-simple, even n, not contained). Message names the check.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NormalizedPolygon {
  /// Vertices relabeled to start at the longest edge, then moved so that
  /// a_0 is the chart origin and a_1 lies on the positive second axis (at
  /// (0, 1) in E2 after scaling).
  ClosedPolygon polygon;
  /// Maps the relabeled input onto `polygon`.
  Motion motion;
  /// Index in the input of the longest edge (first one on ties).
  std::size_t longest_edge = 0;
  /// Length of the longest edge before scaling.
  double rho = 0.0;
};

NormalizedPolygon normalize(const ClosedPolygon& p);

/// Signed coordinates of the vertex projections onto L(a_0, a_1), a_0 at 0.
std::vector<double> projection_coordinates(const ClosedPolygon& normalized);

/// zeta_i = theta_{i+1} - theta_i, cyclic.
std::vector<double> zeta_sequence(std::span<const double> theta);

/// Smallest j in [1, n] with zeta_{j-1} * zeta_{j mod n} >= 0 (zero counts as
/// either sign), or nullopt for a strictly alternating sequence.
std::optional<std::size_t> first_same_sign_pair(std::span<const double> zeta);

/// Same as above on the differences of `theta`; throws for even length.
std::size_t find_monotone_triple(std::span<const double> theta);

struct CandidateTriple {
  /// Labels from {p,q,a,b,c}; the first two span the longest side.
  std::array<char, 3> labels{};
  SortedSides sides;
  double score = 0.0;
};

/// All 10 vertex triples of {p,q,a,b,c}, sorted by ascending score.
std::vector<CandidateTriple> candidate_triples(const Point& p, const Point& q, const Point& a,
                                               const Point& b, const Point& c, int n);

struct CertificateTrace {
  std::size_t longest_edge = 0;
  Motion normalization = Motion::identity(Metric::Euclidean);
  double scale = 1.0;
  double rho = 0.0;
  std::vector<double> theta;
  std::vector<double> zeta;
  std::size_t j = 0;
  bool flipped = false;
  /// Input vertex indices of p, q, a, b, c.
  std::array<std::size_t, 5> labels{};
  std::string case_tag;
  CandidateTriple winner;
  std::vector<CandidateTriple> candidates;
};

struct TriangleCertificate {
  InscribedTriangle triangle;
  double bound = 0.0;
  double perimeter = 0.0;
  double slack = 0.0;
  CertificateTrace trace;
};

class CertificationError : public std::runtime_error {
 public:
  CertificationError(const std::string& what, std::vector<CandidateTriple> candidates)
      : std::runtime_error(what), candidates_(std::move(candidates)) {}
  const std::vector<CandidateTriple>& candidates() const { return candidates_; }

 private:
  std::vector<CandidateTriple> candidates_;
};

/// Validates P (InputError), labels p, q, a, b, c, picks the smallest-score
/// triple that still dominates perim P ({a, b, c} outright when
/// dist(a, c) >= dist(p, q)), and pushes it onto the boundary of `body`.
TriangleCertificate certify(const ClosedPolygon& p, const ConvexBody& body);

/// Euclidean configuration p = (0,0), q = (0,1), a = (wa, ta), c = (wc, tc):
/// (5 dist(p,c) + dist(a,p) + dist(a,c)) - (5 + dist(a,p_a) + dist(p_a,c)),
/// p_a = (0, ta). Requires 0 <= ta <= 1/2, tc > 1, wa, wc >= 0, wc >= wa/2 and
/// dist(a,c) < 1; throws std::domain_error naming the violated condition.
double eu_inequality_gap(double theta_a, double omega_a, double theta_c, double omega_c);

/// 5 cos(chi) - 2 cos(phi) at c = (wc, tc) for the Euclidean configuration.
/// Requires tc > 0, 0 <= ta <= tc/2, wc >= 0.
double eu_derivative_I(double theta_a, double theta_c, double omega_c);

/// Hyperbolic analogue with ta = dist(p,a), tc = dist(p,c), wc = dist(c,p_c).
/// Same domain; the value at wc = 0 is the limit 0.
double hy_derivative_I(double theta_a, double theta_c, double omega_c);

enum class Case1Domination { AviaP, CviaQ, Neither };

/// Hyperbolic configuration with c inside the strip over [p, q]: reports
/// dist(a,b) <= dist(p,b) (AviaP) or else dist(b,c) <= dist(b,q) (CviaQ).
/// Throws InputError naming the first hypothesis that fails.
Case1Domination hy_case1_domination(const Point& p, const Point& q, const Point& a, const Point& b,
                                    const Point& c);

std::string_view to_string(Case1Domination d);

}  // namespace perimax

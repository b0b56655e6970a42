#pragma once

namespace perimax::tol {

// Arithmetic noise in predicates (orientation, intersection parameters).
inline constexpr double kPredicate = 1e-12;
// Incidence of a point with a curve or boundary.
inline constexpr double kIncidence = 1e-10;
// Slack used by property checks.
inline constexpr double kProperty = 1e-9;

}  // namespace perimax::tol

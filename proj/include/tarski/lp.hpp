#pragma once

#include <vector>

#include "tarski/rational.hpp"

namespace tarski {

/// One inequality: coeffs . x <= rhs. Variables are free (unrestricted sign);
/// equalities are written as a <=/>= pair by callers.
struct LinearConstraint {
  RatVec coeffs;
  Rational rhs;
};

enum class LpSense { Minimize, Maximize };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RatVec point;    // an optimal solution when status == Optimal
  Rational value;  // its objective value
};

/// Exact two-phase simplex with Bland's smallest-index rule (terminating, no
/// floating point anywhere). Desk scale: capacity-gated, not performance-tuned.
LpResult solve_lp_exact(LpSense sense, const RatVec& objective,
                        const std::vector<LinearConstraint>& constraints);

/// All vertices of {x | constraints}, by enumerating basic solutions of
/// n-subsets of rows and filtering by exact feasibility. Test-scale only;
/// used to cross-check the simplex from an independent route.
std::vector<RatVec> enumerate_vertices(const std::vector<LinearConstraint>& constraints,
                                       std::size_t num_vars);

}  // namespace tarski

#pragma once

#include "tarski/oracle.hpp"

namespace tarski {

struct FixedPointResult {
  Point point;
  std::size_t queries = 0;
};

/// Kleene descent x <- f(x) from the box top. The iterate chain is strictly
/// <=_c-decreasing until it stops at the greatest fixed point; at most
/// sum(b_i - a_i) + 1 distinct queries.
FixedPointResult greatest_fixed_point(OracleSession& session, const BoxLattice& box);

/// Dual ascent from the box bottom to the least fixed point.
FixedPointResult least_fixed_point(OracleSession& session, const BoxLattice& box);

struct UniquenessReport {
  Point least;
  Point greatest;
  bool unique = false;
  std::size_t queries = 0;
};

/// Decides uniqueness by comparing the extreme fixed points (every fixed
/// point lies between them). known must itself be a fixed point; it is
/// re-verified with one query. Total queries <= 2 * sum(b_i - a_i) + 3,
/// asserted on every run.
UniquenessReport is_unique_fixed_point(MonotoneOracle& oracle, const BoxLattice& box,
                                       const Point& known);

}  // namespace tarski

#pragma once

#include <vector>

#include "tarski/oracle.hpp"

namespace tarski {

struct SolveOptions {
  bool record_trace = false;
};

/// Outcome of a solve. The fixed point was verified by an actual query
/// (f(fixed_point) == fixed_point), even against ill-behaved oracles.
/// queries counts distinct oracle calls made by this solve.
struct SolveResult {
  Point fixed_point;
  std::size_t queries = 0;
  std::vector<BoxLattice> trace;
};

/// Binary search on the rank line of a lexicographically ordered box.
/// Requires an oracle order preserving w.r.t. <=_l. At most
/// ceil(log2 |L|) + 2 distinct queries.
SolveResult solve_lexicographic(OracleSession& session, const BoxLattice& box,
                                const SolveOptions& options = {});

/// Two-dimensional divide and conquer for componentwise order: center probe,
/// up-set/down-set recursion, and row binary search in the antitone cases.
SolveResult solve_2d(OracleSession& session, const BoxLattice& box,
                     const SolveOptions& options = {});

/// General componentwise solver: rank binary search at d = 1, the 2D routine
/// at d = 2, and slice recursion (pin the last coordinate at the center,
/// solve the induced (d-1)-dimensional oracle, branch on the last coordinate
/// of the answer) for d >= 3.
SolveResult solve_componentwise(OracleSession& session, const BoxLattice& box,
                                const SolveOptions& options = {});

}  // namespace tarski

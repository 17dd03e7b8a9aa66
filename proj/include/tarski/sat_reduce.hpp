#pragma once

#include <memory>
#include <optional>

#include "tarski/cnf.hpp"
#include "tarski/oracle.hpp"

namespace tarski {

/// Value i >= 0 written in binary, bit 1 most significant: bits(i) has
/// bits[0] = i_1, ..., bits[n-1] = i_n.
std::vector<bool> value_to_bits(Coord value, int num_vars);
Coord bits_to_value(const std::vector<bool>& bits);

/// Order-preserving oracle on the 1-D lattice [-1, 2^n - 1]:
/// f(-1) = -1, and f(i) = i when F(bits of i) holds, i - 1 otherwise.
/// Its fixed points above the bottom are exactly the satisfying assignments.
std::unique_ptr<MonotoneOracle> lex_oracle_from_cnf(const CnfFormula& f);

/// Componentwise variant on [-1, 2^n - 1]^d: reduce any point to the diagonal
/// of its maximum coordinate, keep the all-(-1) corner fixed, and apply the
/// 1-D rule on the diagonal. Computed on demand; nothing is materialized.
std::unique_ptr<MonotoneOracle> cw_oracle_from_cnf(const CnfFormula& f, std::size_t dim);

/// Decode a verified fixed point of a cnf oracle: nullopt for the bottom,
/// otherwise the binary digits of the diagonal value (which satisfy F).
/// Non-diagonal points cannot be fixed for these oracles and are reported as
/// contract violations.
std::optional<std::vector<bool>> second_fixed_point_to_assignment(const CnfFormula& f,
                                                                  const Point& fp);

}  // namespace tarski

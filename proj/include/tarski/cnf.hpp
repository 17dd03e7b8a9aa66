#pragma once

#include <array>
#include <string>
#include <vector>

#include "tarski/errors.hpp"

namespace tarski {

/// 3-CNF instance. Literals are signed 1-based variable indices; clauses of
/// fewer than three literals ingested from general CNF are padded by
/// repetition, which preserves semantics.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
  std::string source;

  void validate() const;
};

class CnfParseError : public UsageError {
 public:
  CnfParseError(const std::string& message, int line)
      : UsageError("DIMACS parse error at line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct DimacsOptions {
  /// Reject clauses that do not have exactly three literals instead of
  /// padding short ones.
  bool strict3 = false;
};

CnfFormula parse_dimacs(const std::string& text, const DimacsOptions& options = {});
CnfFormula parse_dimacs_file(const std::string& path, const DimacsOptions& options = {});

/// True iff every clause has a satisfied literal. assignment[i] is the value
/// of variable i+1.
bool eval_cnf(const CnfFormula& f, const std::vector<bool>& assignment);

/// Brute-force satisfiability scan over all 2^n assignments; ground truth for
/// the reduction tests. Gated to n <= 20.
bool brute_force_satisfiable(const CnfFormula& f);

}  // namespace tarski

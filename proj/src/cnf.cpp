#include "tarski/cnf.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tarski {

void CnfFormula::validate() const {
  if (num_vars < 0) throw UsageError("CnfFormula: negative variable count");
  for (const auto& clause : clauses) {
    for (int lit : clause) {
      int v = std::abs(lit);
      if (lit == 0 || v > num_vars) {
        throw UsageError("CnfFormula: literal " + std::to_string(lit) +
                         " out of range for " + std::to_string(num_vars) + " variables");
      }
    }
  }
}

CnfFormula parse_dimacs(const std::string& text, const DimacsOptions& options) {
  CnfFormula f;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int declared_clauses = 0;
  std::vector<int> current;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      if (have_header) throw CnfParseError("duplicate header", line_no);
      std::string fmt;
      if (!(ls >> fmt) || fmt != "cnf") throw CnfParseError("expected 'p cnf n m'", line_no);
      if (!(ls >> f.num_vars >> declared_clauses) || f.num_vars < 0 || declared_clauses < 0) {
        throw CnfParseError("expected 'p cnf n m'", line_no);
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw CnfParseError("clause before 'p cnf' header", line_no);
    ls.clear();
    ls.seekg(0);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw CnfParseError("empty clause", line_no);
        if (current.size() > 3) {
          throw CnfParseError("clause has " + std::to_string(current.size()) +
                                  " literals; at most three are supported",
                              line_no);
        }
        if (options.strict3 && current.size() != 3) {
          throw CnfParseError("clause has " + std::to_string(current.size()) +
                                  " literals under --strict3",
                              line_no);
        }
        while (current.size() < 3) current.push_back(current.back());
        f.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        continue;
      }
      if (std::abs(lit) > f.num_vars) {
        throw CnfParseError("literal " + std::to_string(lit) + " exceeds variable count " +
                                std::to_string(f.num_vars),
                            line_no);
      }
      current.push_back(lit);
    }
    if (!ls.eof()) throw CnfParseError("malformed literal", line_no);
  }
  if (!have_header) throw CnfParseError("missing 'p cnf' header", line_no);
  if (!current.empty()) throw CnfParseError("clause not terminated by 0", line_no);
  if (declared_clauses != static_cast<int>(f.clauses.size())) {
    throw CnfParseError("header declared " + std::to_string(declared_clauses) +
                            " clauses but " + std::to_string(f.clauses.size()) +
                            " were given",
                        line_no);
  }
  f.validate();
  return f;
}

CnfFormula parse_dimacs_file(const std::string& path, const DimacsOptions& options) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open CNF file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  CnfFormula f = parse_dimacs(buf.str(), options);
  f.source = path;
  return f;
}

bool eval_cnf(const CnfFormula& f, const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != f.num_vars) {
    throw UsageError("eval_cnf: assignment length " + std::to_string(assignment.size()) +
                     " does not match variable count " + std::to_string(f.num_vars));
  }
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      bool value = assignment[static_cast<std::size_t>(std::abs(lit)) - 1];
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

bool brute_force_satisfiable(const CnfFormula& f) {
  if (f.num_vars > 20) {
    throw CapacityError("brute_force_satisfiable: gated to n <= 20");
  }
  std::vector<bool> a(static_cast<std::size_t>(f.num_vars));
  const std::uint64_t total = std::uint64_t(1) << f.num_vars;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (int i = 0; i < f.num_vars; ++i) {
      a[static_cast<std::size_t>(i)] = (bits >> (f.num_vars - 1 - i)) & 1;
    }
    if (eval_cnf(f, a)) return true;
  }
  return false;
}

}  // namespace tarski

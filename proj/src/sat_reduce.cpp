#include "tarski/sat_reduce.hpp"

#include <algorithm>

namespace tarski {

namespace {

constexpr int kMaxReductionVars = 62;

void require_reducible(const CnfFormula& f) {
  f.validate();
  if (f.num_vars < 1 || f.num_vars > kMaxReductionVars) {
    throw CapacityError("cnf reduction: variable count must be in [1, 62], got " +
                        std::to_string(f.num_vars));
  }
}

Coord top_value(const CnfFormula& f) {
  return (Coord(1) << f.num_vars) - 1;
}

/// The shared diagonal rule: i stays iff F(bits of i) holds, else steps down.
Coord diagonal_step(const CnfFormula& f, Coord i) {
  if (i < 0) return -1;
  return eval_cnf(f, value_to_bits(i, f.num_vars)) ? i : i - 1;
}

class LexCnfOracle final : public MonotoneOracle {
 public:
  explicit LexCnfOracle(CnfFormula f)
      : MonotoneOracle(BoxLattice(Point{-1}, Point{top_value(f)})), formula_(std::move(f)) {}

  Point raw_eval(const Point& x) override {
    return Point{diagonal_step(formula_, x[0])};
  }

 private:
  CnfFormula formula_;
};

class CwCnfOracle final : public MonotoneOracle {
 public:
  CwCnfOracle(CnfFormula f, std::size_t dim)
      : MonotoneOracle(BoxLattice(Point::filled(dim, -1), Point::filled(dim, top_value(f)))),
        formula_(std::move(f)) {}

  Point raw_eval(const Point& x) override {
    Coord m = *std::max_element(x.begin(), x.end());
    return Point::filled(box_.dim(), diagonal_step(formula_, m));
  }

 private:
  CnfFormula formula_;
};

}  // namespace

std::vector<bool> value_to_bits(Coord value, int num_vars) {
  if (value < 0 || (num_vars < 63 && value >= (Coord(1) << num_vars))) {
    throw UsageError("value_to_bits: value " + std::to_string(value) +
                     " out of range for " + std::to_string(num_vars) + " bits");
  }
  std::vector<bool> bits(static_cast<std::size_t>(num_vars));
  for (int i = 0; i < num_vars; ++i) {
    bits[static_cast<std::size_t>(i)] = (value >> (num_vars - 1 - i)) & 1;
  }
  return bits;
}

Coord bits_to_value(const std::vector<bool>& bits) {
  Coord v = 0;
  for (bool b : bits) v = (v << 1) | (b ? 1 : 0);
  return v;
}

std::unique_ptr<MonotoneOracle> lex_oracle_from_cnf(const CnfFormula& f) {
  require_reducible(f);
  return std::make_unique<LexCnfOracle>(f);
}

std::unique_ptr<MonotoneOracle> cw_oracle_from_cnf(const CnfFormula& f, std::size_t dim) {
  require_reducible(f);
  if (dim < 1) throw UsageError("cw_oracle_from_cnf: dimension must be >= 1");
  return std::make_unique<CwCnfOracle>(f, dim);
}

std::optional<std::vector<bool>> second_fixed_point_to_assignment(const CnfFormula& f,
                                                                  const Point& fp) {
  require_reducible(f);
  for (std::size_t i = 1; i < fp.dim(); ++i) {
    if (fp[i] != fp[0]) {
      throw ContractViolation(
          "fixed point " + to_string(fp) +
              " of a cnf oracle is not diagonal; the construction forces diagonal "
              "fixed points",
          {{fp, fp}});
    }
  }
  if (fp[0] == -1) return std::nullopt;
  if (fp[0] < 0 || fp[0] > top_value(f)) {
    throw UsageError("second_fixed_point_to_assignment: value " + std::to_string(fp[0]) +
                     " outside [-1, 2^n - 1]");
  }
  return value_to_bits(fp[0], f.num_vars);
}

}  // namespace tarski

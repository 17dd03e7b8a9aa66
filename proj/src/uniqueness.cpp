#include "tarski/uniqueness.hpp"

namespace tarski {

namespace {

Size128 side_sum(const BoxLattice& box) {
  Size128 s = 0;
  for (std::size_t i = 0; i < box.dim(); ++i) s += box.side_count(i) - 1;
  return s;
}

enum class Direction { Down, Up };

FixedPointResult extreme_fixed_point(OracleSession& session, const BoxLattice& box,
                                     Direction dir) {
  std::size_t before = session.distinct_queries();
  Point x = dir == Direction::Down ? box.upper() : box.lower();
  const Size128 max_steps = side_sum(box) + 1;
  for (Size128 step = 0; step < max_steps; ++step) {
    const Point& fx = session.query(x);
    if (!box.contains(fx)) {
      throw ContractViolation("iterate escaped the box: f(" + to_string(x) + ") = " +
                                  to_string(fx),
                              {{x, fx}});
    }
    Cmp c = compare(OrderRelation::Componentwise, fx, x);
    if (c == Cmp::Equal) {
      return {x, session.distinct_queries() - before};
    }
    bool ok = dir == Direction::Down ? c == Cmp::Less : c == Cmp::Greater;
    if (!ok) {
      throw ContractViolation(
          "oracle is not order preserving: the iterate chain must stay " +
              std::string(dir == Direction::Down ? "descending" : "ascending") +
              " but f(" + to_string(x) + ") = " + to_string(fx),
          {{x, fx}});
    }
    x = fx;
  }
  // Strict monotone movement makes more than side_sum+1 steps impossible.
  throw std::logic_error("extreme_fixed_point: query budget exceeded");
}

}  // namespace

FixedPointResult greatest_fixed_point(OracleSession& session, const BoxLattice& box) {
  return extreme_fixed_point(session, box, Direction::Down);
}

FixedPointResult least_fixed_point(OracleSession& session, const BoxLattice& box) {
  return extreme_fixed_point(session, box, Direction::Up);
}

UniquenessReport is_unique_fixed_point(MonotoneOracle& oracle, const BoxLattice& box,
                                       const Point& known) {
  OracleSession down(oracle);
  const Point& fk = down.query(known);
  if (fk != known) {
    throw UsageError("is_unique_fixed_point: known point " + to_string(known) +
                     " is not a fixed point (f maps it to " + to_string(fk) + ")");
  }
  FixedPointResult top = greatest_fixed_point(down, box);
  OracleSession up(oracle);
  FixedPointResult bottom = least_fixed_point(up, box);

  UniquenessReport report;
  report.least = bottom.point;
  report.greatest = top.point;
  report.unique = bottom.point == top.point;
  report.queries = down.distinct_queries() + up.distinct_queries();

  if (!leq(OrderRelation::Componentwise, report.least, report.greatest)) {
    throw ContractViolation(
        "oracle is not order preserving: least fixed point " + to_string(report.least) +
            " does not lie below greatest " + to_string(report.greatest),
        {{box.lower(), report.least}, {box.upper(), report.greatest}});
  }
  Size128 budget = 2 * side_sum(box) + 3;
  if (report.queries > budget) {
    throw std::logic_error("is_unique_fixed_point: query budget exceeded");
  }
  return report;
}

}  // namespace tarski

#include "tarski/solver.hpp"

#include <optional>

namespace tarski {

namespace {

unsigned ceil_log2_u128(Size128 v) {
  if (v <= 1) return 0;
  unsigned bits = 0;
  Size128 w = v - 1;
  while (w > 0) {
    w >>= 1;
    ++bits;
  }
  return bits;
}

[[noreturn]] void throw_escape(const BoxLattice& box, const Point& x, const Point& fx) {
  throw ContractViolation(
      "oracle is not order preserving on " + to_string(box) + ": f(" + to_string(x) +
          ") = " + to_string(fx) + " leaves a sub-box that a monotone map keeps invariant",
      {{x, fx}});
}

void record(std::vector<BoxLattice>* trace, const BoxLattice& box) {
  if (trace) trace->push_back(box);
}

/// Rank-line binary search shared by the lexicographic solver and the 1-D
/// componentwise base case. Interval invariant: f(lo) >=_l lo and
/// f(hi) <=_l hi, both holding a priori at the ends of the box.
Point total_order_search(OracleSession& session, const BoxLattice& box) {
  Size128 lo = 0;
  Size128 hi = box.size() - 1;
  while (lo < hi) {
    Size128 mid = lo + (hi - lo) / 2;
    Point pm = box.unrank(mid);
    const Point& fm = session.query(pm);
    if (!box.contains(fm)) throw_escape(box, pm, fm);
    Cmp c = compare(OrderRelation::Lexicographic, fm, pm);
    if (c == Cmp::Equal) return pm;
    if (c == Cmp::Greater) {
      lo = mid + 1;  // mid < hi, so this stays in range
    } else {
      if (mid == lo) {
        throw ContractViolation(
            "oracle is not order preserving under <=_l: f(" + to_string(pm) + ") = " +
                to_string(fm) + " contradicts the bracketing invariant",
            {{pm, fm}});
      }
      hi = mid - 1;
    }
  }
  Point p = box.unrank(lo);
  const Point& fp = session.query(p);
  if (fp == p) return p;
  throw ContractViolation(
      "oracle is not order preserving under <=_l: bracket collapsed to " + to_string(p) +
          " but f(" + to_string(p) + ") = " + to_string(fp),
      {{p, fp}});
}

struct RowSearchOutcome {
  std::optional<Point> fixed;
  std::optional<BoxLattice> next;
};

/// Binary search along one row (fixed second coordinate) of box. Invariant:
/// f(l)_1 >= l_1 and f(r)_1 <= r_1, the left end holding a priori when l sits
/// on the box's left face and the right end having been observed. Locates a
/// crossing point x' with f(x')_1 = x'_1, then resolves it into a fixed point
/// or a sub-box by the sign of f(x')_2 - x'_2.
RowSearchOutcome row_binary_search(OracleSession& session, const BoxLattice& box,
                                   Coord left1, Coord right1, Coord row) {
  while (true) {
    if (left1 == right1) {
      Point z{left1, row};
      const Point& fz = session.query(z);
      if (!box.contains(fz)) throw_escape(box, z, fz);
      if (fz == z) return {z, std::nullopt};
      if (fz[0] != z[0]) {
        throw ContractViolation(
            "oracle is not order preserving: row search pinned " + to_string(z) +
                " as a first-coordinate crossing, but f(" + to_string(z) + ") = " +
                to_string(fz),
            {{z, fz}});
      }
      if (fz[1] > z[1]) return {std::nullopt, box.sub_box(fz, BoxLattice::SubBoxDir::UpSet)};
      return {std::nullopt, box.sub_box(fz, BoxLattice::SubBoxDir::DownSet)};
    }
    Point m{floor_div2(left1, right1), row};
    const Point& fm = session.query(m);
    if (!box.contains(fm)) throw_escape(box, m, fm);
    Cmp c = compare(OrderRelation::Componentwise, fm, m);
    if (c == Cmp::Equal) return {m, std::nullopt};
    if (c == Cmp::Greater) return {std::nullopt, box.sub_box(fm, BoxLattice::SubBoxDir::UpSet)};
    if (c == Cmp::Less) return {std::nullopt, box.sub_box(fm, BoxLattice::SubBoxDir::DownSet)};
    if (fm[0] < m[0]) {
      if (m[0] == left1) {
        throw ContractViolation(
            "oracle is not order preserving: f(" + to_string(m) + ") = " + to_string(fm) +
                " contradicts the row-search invariant at the left end",
            {{m, fm}});
      }
      right1 = m[0] - 1;
    } else {
      left1 = m[0] + 1;  // m[0] < right1 since left1 < right1
    }
  }
}

/// 2D Point_check: probe the center; recurse on the up-set or down-set when
/// the answer is comparable, otherwise binary search the center row toward
/// the box face whose boundary condition is guaranteed.
Point point_check_2d(OracleSession& session, BoxLattice box,
                     std::vector<BoxLattice>* trace) {
  record(trace, box);
  while (true) {
    if (box.is_singleton()) {
      Point p = box.lower();
      const Point& fp = session.query(p);
      if (fp == p) return p;
      throw_escape(box, p, fp);
    }
    Point x0 = box.center();
    const Point& fx0 = session.query(x0);
    if (!box.contains(fx0)) throw_escape(box, x0, fx0);
    Cmp c = compare(OrderRelation::Componentwise, fx0, x0);
    if (c == Cmp::Equal) return x0;
    if (c == Cmp::Greater) {
      // Every fixed point above x0 dominates f(x0), so the corner tightens.
      box = box.sub_box(fx0, BoxLattice::SubBoxDir::UpSet);
      record(trace, box);
      continue;
    }
    if (c == Cmp::Less) {
      box = box.sub_box(fx0, BoxLattice::SubBoxDir::DownSet);
      record(trace, box);
      continue;
    }
    RowSearchOutcome out =
        fx0[0] < x0[0]
            ? row_binary_search(session, box, box.lower()[0], x0[0], x0[1])
            : row_binary_search(session, box, x0[0], box.upper()[0], x0[1]);
    if (out.fixed) return *out.fixed;
    box = *out.next;
    record(trace, box);
  }
}

Point append_coord(const Point& x, Coord v) {
  std::vector<Coord> c(x.coords());
  c.push_back(v);
  return Point(std::move(c));
}

Point drop_last(const Point& x) {
  std::vector<Coord> c(x.coords().begin(), x.coords().end() - 1);
  return Point(std::move(c));
}

/// View of the parent oracle on the slice x_d = pinned: the first d-1
/// coordinates of f(x, pinned). Order preserving whenever f is, and a
/// self-map of the slice box whenever f keeps the current box invariant.
class SliceOracle final : public MonotoneOracle {
 public:
  SliceOracle(BoxLattice slice_box, OracleSession& parent, Coord pinned)
      : MonotoneOracle(std::move(slice_box)), parent_(parent), pinned_(pinned) {}

  Point raw_eval(const Point& x) override {
    return drop_last(parent_.query(append_coord(x, pinned_)));
  }

 private:
  OracleSession& parent_;
  Coord pinned_;
};

Point fixed_point_cw(OracleSession& session, BoxLattice box,
                     std::vector<BoxLattice>* trace) {
  const std::size_t d = box.dim();
  if (d == 1) return total_order_search(session, box);
  if (d == 2) return point_check_2d(session, box, trace);

  record(trace, box);
  const Size128 guard = ceil_log2_u128(box.side_count(d - 1)) + 3;
  for (Size128 iter = 0;; ++iter) {
    if (iter > guard) {
      throw ContractViolation(
          "suspected nonmonotone oracle: slice recursion on " + to_string(box) +
          " exceeded its d*(2+log2 N) depth budget");
    }
    if (box.is_singleton()) {
      Point p = box.lower();
      const Point& fp = session.query(p);
      if (fp == p) return p;
      throw_escape(box, p, fp);
    }
    Coord pinned = floor_div2(box.lower()[d - 1], box.upper()[d - 1]);
    BoxLattice slice_box(drop_last(box.lower()), drop_last(box.upper()));
    SliceOracle slice(slice_box, session, pinned);
    OracleSession slice_session(slice);
    Point xstar = fixed_point_cw(slice_session, slice_box, nullptr);
    Point z = append_coord(xstar, pinned);
    const Point& fz = session.query(z);  // memo hit of the slice's verification
    if (!box.contains(fz)) throw_escape(box, z, fz);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      if (fz[i] != z[i]) {
        throw ContractViolation(
            "oracle changed a memoized slice answer at " + to_string(z), {{z, fz}});
      }
    }
    if (fz == z) return z;
    if (fz[d - 1] > pinned) {
      box = box.sub_box(fz, BoxLattice::SubBoxDir::UpSet);
    } else {
      box = box.sub_box(fz, BoxLattice::SubBoxDir::DownSet);
    }
    record(trace, box);
  }
}

void require_sub_box(const OracleSession& session, const BoxLattice& box) {
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (box.lower()[i] < session.box().lower()[i] ||
        box.upper()[i] > session.box().upper()[i]) {
      throw UsageError("solve: box " + to_string(box) + " not contained in oracle box " +
                       to_string(session.box()));
    }
  }
}

}  // namespace

SolveResult solve_lexicographic(OracleSession& session, const BoxLattice& box,
                                const SolveOptions& options) {
  require_sub_box(session, box);
  SolveResult result;
  std::size_t before = session.distinct_queries();
  result.fixed_point = total_order_search(session, box);
  if (options.record_trace) result.trace.push_back(box);
  result.queries = session.distinct_queries() - before;
  return result;
}

SolveResult solve_2d(OracleSession& session, const BoxLattice& box,
                     const SolveOptions& options) {
  if (box.dim() != 2) throw UsageError("solve_2d: box must be two-dimensional");
  require_sub_box(session, box);
  SolveResult result;
  std::size_t before = session.distinct_queries();
  result.fixed_point =
      point_check_2d(session, box, options.record_trace ? &result.trace : nullptr);
  result.queries = session.distinct_queries() - before;
  return result;
}

SolveResult solve_componentwise(OracleSession& session, const BoxLattice& box,
                                const SolveOptions& options) {
  require_sub_box(session, box);
  SolveResult result;
  std::size_t before = session.distinct_queries();
  result.fixed_point =
      fixed_point_cw(session, box, options.record_trace ? &result.trace : nullptr);
  result.queries = session.distinct_queries() - before;
  return result;
}

}  // namespace tarski

#include "tarski/adversary.hpp"

#include <unordered_map>

#include "tarski/generators.hpp"

namespace tarski {

std::size_t max_positive_index(const Point& x) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i] < 0) {
      throw UsageError("max_positive_index: point " + to_string(x) +
                       " has a negative coordinate");
    }
    if (x[i] > 0) best = i;
  }
  if (!best) {
    throw UsageError("max_positive_index: undefined on the zero vector");
  }
  return *best;
}

LineAdversary::LineAdversary(Coord num_points)
    : MonotoneOracle(BoxLattice(Point{0}, Point{num_points - 1})) {
  if (num_points < 2) throw UsageError("LineAdversary: need at least two points");
}

Point LineAdversary::raw_eval(const Point& x) {
  queried_.insert(x[0]);
  return Point{x[0] == 0 ? 0 : x[0] - 1};
}

std::optional<Point> line_can_hide_second(const LineAdversary& adversary) {
  const BoxLattice& box = adversary.box();
  if (box.size() > kBruteForceMaxPoints) {
    throw CapacityError("line_can_hide_second: lattice too large for the completion check");
  }
  const Coord top = box.upper()[0];
  const auto& asked = adversary.queried();
  for (Coord cand = 1; cand <= top; ++cand) {
    if (asked.count(cand)) continue;
    // Completion candidate: the standard answers everywhere, cand pinned fixed.
    auto value = [&](Coord x) { return x == cand ? x : (x == 0 ? 0 : x - 1); };
    bool monotone = true;
    for (Coord x = 0; x < top && monotone; ++x) {
      if (value(x) > value(x + 1)) monotone = false;
    }
    if (monotone) return Point{cand};
  }
  return std::nullopt;
}

AuxAdversary::AuxAdversary(std::vector<Coord> upper)
    : MonotoneOracle(BoxLattice(Point::filled(upper.size(), 0), Point(upper))) {
  for (Coord n : box_.upper().coords()) {
    if (n < 1) throw UsageError("AuxAdversary: every side bound must be >= 1");
  }
}

Point AuxAdversary::raw_eval(const Point& x) {
  queried_.insert(x.coords());
  bool zero = true;
  for (Coord c : x) {
    if (c != 0) zero = false;
  }
  if (zero) return x;
  Point y = x;
  y[max_positive_index(x)] -= 1;
  return y;
}

std::optional<Point> aux_can_hide_second(const AuxAdversary& adversary) {
  const BoxLattice& box = adversary.box();
  if (box.size() > kCompletionCheckMaxPoints) {
    throw CapacityError("aux_can_hide_second: lattice has " + to_string(box.size()) +
                        " points, completion check gated at " +
                        to_string(kCompletionCheckMaxPoints));
  }
  const std::size_t n = static_cast<std::size_t>(box.size());
  const std::size_t d = box.dim();
  const Point zero = box.lower();

  auto aux_answer = [&](const Point& x) {
    if (x == zero) return x;
    Point y = x;
    y[max_positive_index(x)] -= 1;
    return y;
  };

  // Pinned answers by rank: the known fixed point, plus everything asked.
  std::unordered_map<std::size_t, Point> pinned;
  pinned.emplace(static_cast<std::size_t>(box.rank(zero)), zero);
  for (const auto& q : adversary.queried()) {
    Point p(q);
    pinned.emplace(static_cast<std::size_t>(box.rank(p)), aux_answer(p));
  }

  std::vector<std::size_t> stride(d, 1);
  for (std::size_t i = d; i-- > 1;) {
    stride[i - 1] = stride[i] * static_cast<std::size_t>(box.side_count(i));
  }

  std::vector<Point> completion(n);
  auto try_candidate = [&](std::size_t cand_rank, const Point& cand) {
    // Minimal monotone map dominating every pinned answer from below.
    std::vector<Coord> off(d, 0);
    for (std::size_t r = 0; r < n; ++r) {
      Point f = zero;
      auto it = pinned.find(r);
      if (r == cand_rank) {
        f = cand;
      } else if (it != pinned.end()) {
        f = it->second;
      }
      for (std::size_t i = 0; i < d; ++i) {
        if (off[i] > 0) f = join(f, completion[r - stride[i]]);
      }
      completion[r] = std::move(f);
      for (std::size_t i = d; i-- > 0;) {
        if (off[i] + box.lower()[i] < box.upper()[i]) {
          ++off[i];
          break;
        }
        off[i] = 0;
      }
    }
    // The completion must reproduce every pinned answer and be monotone in
    // full; adjacent pairs generate all comparable ones.
    for (const auto& [r, want] : pinned) {
      if (completion[r] != want) return false;
    }
    if (completion[cand_rank] != cand) return false;
    std::vector<Coord> pos(d, 0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < d; ++i) {
        if (pos[i] + box.lower()[i] < box.upper()[i] &&
            !leq(OrderRelation::Componentwise, completion[r], completion[r + stride[i]])) {
          return false;
        }
      }
      for (std::size_t i = d; i-- > 0;) {
        if (pos[i] + box.lower()[i] < box.upper()[i]) {
          ++pos[i];
          break;
        }
        pos[i] = 0;
      }
    }
    return true;
  };

  for (BoxIterator it(box); it.valid(); ++it) {
    const Point& cand = *it;
    if (cand == zero) continue;
    std::size_t r = static_cast<std::size_t>(box.rank(cand));
    if (pinned.count(r)) continue;  // already answered, cannot re-pin
    if (try_candidate(r, cand)) return cand;
  }
  return std::nullopt;
}

}  // namespace tarski

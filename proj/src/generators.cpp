#include "tarski/generators.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace tarski {

Coord StepFunction::eval(Coord x) const {
  auto it = std::upper_bound(thresholds.begin(), thresholds.end(), x);
  if (it == thresholds.begin()) return base_value;
  return values[static_cast<std::size_t>(it - thresholds.begin()) - 1];
}

StepFunction StepFunction::identity_on(Coord lo, Coord hi) {
  StepFunction s;
  s.base_value = lo;
  for (Coord t = lo; t <= hi; ++t) {
    s.thresholds.push_back(t);
    s.values.push_back(t);
    if (t == hi) break;  // guards hi == INT64_MAX
  }
  return s;
}

StepFunction StepFunction::constant(Coord v) {
  StepFunction s;
  s.base_value = v;
  return s;
}

StructuredOracle::StructuredOracle(BoxLattice box, std::vector<Coord> offsets,
                                   std::vector<std::vector<Coord>> weights,
                                   std::vector<std::vector<StepFunction>> steps)
    : MonotoneOracle(std::move(box)),
      offsets_(std::move(offsets)),
      weights_(std::move(weights)),
      steps_(std::move(steps)) {
  const std::size_t d = box_.dim();
  if (offsets_.size() != d || weights_.size() != d || steps_.size() != d) {
    throw UsageError("StructuredOracle: parameter shapes must match dimension");
  }
  for (std::size_t k = 0; k < d; ++k) {
    if (weights_[k].size() != d || steps_[k].size() != d) {
      throw UsageError("StructuredOracle: parameter shapes must match dimension");
    }
    for (Coord w : weights_[k]) {
      if (w < 0) throw UsageError("StructuredOracle: weights must be nonnegative");
    }
    for (const StepFunction& s : steps_[k]) {
      for (std::size_t i = 1; i < s.values.size(); ++i) {
        if (s.values[i] < s.values[i - 1]) {
          throw UsageError("StructuredOracle: step values must be nondecreasing");
        }
      }
      if (!s.values.empty() && !s.thresholds.empty() && s.values.front() < s.base_value) {
        throw UsageError("StructuredOracle: step values must be nondecreasing");
      }
    }
  }
}

Point StructuredOracle::raw_eval(const Point& x) {
  const std::size_t d = box_.dim();
  std::vector<Coord> out(d);
  for (std::size_t k = 0; k < d; ++k) {
    __int128 acc = offsets_[k];
    for (std::size_t j = 0; j < d; ++j) {
      if (weights_[k][j] == 0) continue;
      acc += static_cast<__int128>(weights_[k][j]) * steps_[k][j].eval(x[j]);
    }
    __int128 lo = box_.lower()[k], hi = box_.upper()[k];
    if (acc < lo) acc = lo;
    if (acc > hi) acc = hi;
    out[k] = static_cast<Coord>(acc);
  }
  return Point(std::move(out));
}

namespace {

// Random nondecreasing step over [lo, hi] whose values span about [0, span].
StepFunction random_step(std::mt19937_64& rng, Coord lo, Coord hi, Coord span) {
  StepFunction s;
  s.base_value = 0;
  if (span < 0) span = 0;
  std::size_t want = 4 + static_cast<std::size_t>(rng() % 9);
  std::set<Coord> ts;
  Size128 side = static_cast<Size128>(static_cast<__int128>(hi) - lo) + 1;
  if (side <= 1) return s;
  for (std::size_t tries = 0; tries < 4 * want && ts.size() < want; ++tries) {
    Coord t = lo + 1 + static_cast<Coord>(rng() % static_cast<std::uint64_t>(
                                              static_cast<Size128>(side - 1)));
    ts.insert(t);
  }
  std::vector<Coord> vals;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    vals.push_back(static_cast<Coord>(rng() % static_cast<std::uint64_t>(span + 1)));
  }
  std::sort(vals.begin(), vals.end());
  s.thresholds.assign(ts.begin(), ts.end());
  s.values = std::move(vals);
  return s;
}

}  // namespace

std::unique_ptr<MonotoneOracle> gen_structured_monotone(std::uint64_t seed,
                                                        const BoxLattice& box) {
  std::mt19937_64 rng(seed);
  const std::size_t d = box.dim();
  std::vector<Coord> offsets(d);
  std::vector<std::vector<Coord>> weights(d, std::vector<Coord>(d, 0));
  std::vector<std::vector<StepFunction>> steps(d);
  for (std::size_t k = 0; k < d; ++k) {
    steps[k].resize(d);
    Coord range = box.upper()[k] - box.lower()[k];
    Coord total_weight = 0;
    for (std::size_t j = 0; j < d; ++j) {
      Coord w;
      if (j == k) {
        w = 1 + static_cast<Coord>(rng() % 2);
      } else {
        w = (rng() % 2 == 0) ? 0 : 1 + static_cast<Coord>(rng() % 2);
      }
      weights[k][j] = w;
      total_weight += w;
    }
    Coord span = range / std::max<Coord>(total_weight, 1);
    __int128 reach = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (weights[k][j] == 0) {
        steps[k][j] = StepFunction::constant(0);
        continue;
      }
      steps[k][j] = random_step(rng, box.lower()[j], box.upper()[j], span);
      Coord top = steps[k][j].values.empty() ? steps[k][j].base_value
                                             : steps[k][j].values.back();
      reach += static_cast<__int128>(weights[k][j]) * top;
    }
    __int128 slack = static_cast<__int128>(range) - reach;
    __int128 jitter = 0;
    if (range > 0) {
      jitter = static_cast<__int128>(rng() % static_cast<std::uint64_t>(range / 2 + 1)) -
               range / 4;
    }
    __int128 c = static_cast<__int128>(box.lower()[k]) + slack / 2 + jitter;
    // Clamp the offset so outputs are not pinned to one side of the box.
    __int128 lo = static_cast<__int128>(box.lower()[k]) - reach;
    __int128 hi = box.upper()[k];
    if (c < lo) c = lo;
    if (c > hi) c = hi;
    offsets[k] = static_cast<Coord>(c);
  }
  return std::make_unique<StructuredOracle>(box, std::move(offsets), std::move(weights),
                                            std::move(steps));
}

namespace {

class ClosureOracle final : public MonotoneOracle {
 public:
  ClosureOracle(BoxLattice box, std::vector<Point> table)
      : MonotoneOracle(std::move(box)), table_(std::move(table)) {}

  Point raw_eval(const Point& x) override {
    return table_[static_cast<std::size_t>(box_.rank(x))];
  }

 private:
  std::vector<Point> table_;
};

std::vector<Point> monotone_closure_table(const BoxLattice& box,
                                          const std::vector<Point>& raw) {
  const std::size_t n = static_cast<std::size_t>(box.size());
  const std::size_t d = box.dim();
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t i = d; i-- > 1;) {
    stride[i - 1] = stride[i] * static_cast<std::size_t>(box.side_count(i));
  }
  std::vector<Point> table(n);
  std::vector<Coord> off(d, 0);  // x - lower, tracked as an odometer
  for (std::size_t r = 0; r < n; ++r) {
    Point f = raw[r];
    for (std::size_t i = 0; i < d; ++i) {
      if (off[i] > 0) f = join(f, table[r - stride[i]]);
    }
    table[r] = std::move(f);
    for (std::size_t i = d; i-- > 0;) {
      if (off[i] + box.lower()[i] < box.upper()[i]) {
        ++off[i];
        break;
      }
      off[i] = 0;
    }
  }
  return table;
}

}  // namespace

std::unique_ptr<MonotoneOracle> closure_of_raw_map(const BoxLattice& box,
                                                   const std::vector<Point>& raw) {
  if (box.size() > kClosureMaxPoints) {
    throw CapacityError("closure oracle: box has " + to_string(box.size()) +
                        " points, limit " + to_string(kClosureMaxPoints));
  }
  if (raw.size() != static_cast<std::size_t>(box.size())) {
    throw UsageError("closure_of_raw_map: raw table size must equal |L|");
  }
  for (const Point& p : raw) {
    if (!box.contains(p)) {
      throw UsageError("closure_of_raw_map: raw value " + to_string(p) + " outside box");
    }
  }
  return std::make_unique<ClosureOracle>(box, monotone_closure_table(box, raw));
}

std::unique_ptr<MonotoneOracle> gen_closure_monotone(std::uint64_t seed,
                                                     const BoxLattice& box) {
  if (box.size() > kClosureMaxPoints) {
    throw CapacityError("gen_closure_monotone: box has " + to_string(box.size()) +
                        " points, limit " + to_string(kClosureMaxPoints));
  }
  std::mt19937_64 rng(seed);
  const std::size_t n = static_cast<std::size_t>(box.size());
  std::vector<Point> raw;
  raw.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    raw.push_back(box.unrank(rng() % static_cast<std::uint64_t>(n)));
  }
  return std::make_unique<ClosureOracle>(box, monotone_closure_table(box, raw));
}

std::vector<Point> brute_force_fixed_points(MonotoneOracle& oracle,
                                            const BoxLattice& box) {
  if (box.size() > kBruteForceMaxPoints) {
    throw CapacityError("brute_force_fixed_points: box has " + to_string(box.size()) +
                        " points, limit " + to_string(kBruteForceMaxPoints));
  }
  std::vector<Point> fixed;
  for (BoxIterator it(box); it.valid(); ++it) {
    Point y = oracle.raw_eval(*it);
    if (!box.contains(y)) {
      throw ContractViolation("oracle answered f(" + to_string(*it) + ") = " +
                                  to_string(y) + ", outside the box",
                              {{*it, y}});
    }
    if (y == *it) fixed.push_back(*it);
  }
  return fixed;
}

std::unique_ptr<MonotoneOracle> gen_lex_monotone(std::uint64_t seed,
                                                 const BoxLattice& box) {
  if (box.size() > (Size128(1) << 62)) {
    throw CapacityError("gen_lex_monotone: |L| must fit a signed 64-bit rank line");
  }
  Coord top = static_cast<Coord>(box.size() - 1);
  BoxLattice rank_line(Point{0}, Point{top});
  auto inner = gen_structured_monotone(seed, rank_line);
  auto fn = [box, line = std::shared_ptr<MonotoneOracle>(std::move(inner))](
                const Point& x) {
    Point r{static_cast<Coord>(box.rank(x))};
    Point g = line->raw_eval(r);
    return box.unrank(static_cast<Size128>(g[0]));
  };
  return std::make_unique<CallbackOracle>(box, std::move(fn));
}

}  // namespace tarski

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tarski/oracle.hpp"

namespace tarski {

inline constexpr Size128 kClosureMaxPoints = Size128(1) << 16;
inline constexpr Size128 kBruteForceMaxPoints = Size128(1) << 20;

/// Nondecreasing step function Z -> Z as a sorted breakpoint list:
/// value(x) = values[k] for the largest k with thresholds[k] <= x, and
/// base_value below the first threshold. values must be nondecreasing.
struct StepFunction {
  Coord base_value = 0;
  std::vector<Coord> thresholds;  // strictly increasing
  std::vector<Coord> values;      // nondecreasing, same length

  Coord eval(Coord x) const;

  static StepFunction identity_on(Coord lo, Coord hi);
  static StepFunction constant(Coord v);
};

/// f(x)_k = clamp_k(offset_k + sum_j weight[k][j] * step[k][j](x_j)) with
/// nonnegative weights and nondecreasing steps; monotone by construction and
/// lazy, so it scales to huge boxes.
class StructuredOracle final : public MonotoneOracle {
 public:
  StructuredOracle(BoxLattice box, std::vector<Coord> offsets,
                   std::vector<std::vector<Coord>> weights,
                   std::vector<std::vector<StepFunction>> steps);

  Point raw_eval(const Point& x) override;

 private:
  std::vector<Coord> offsets_;
  std::vector<std::vector<Coord>> weights_;
  std::vector<std::vector<StepFunction>> steps_;
};

/// Seeded random structured instance; deterministic per (seed, box).
std::unique_ptr<MonotoneOracle> gen_structured_monotone(std::uint64_t seed,
                                                        const BoxLattice& box);

/// Monotone closure of a seeded arbitrary raw map r : L -> L,
/// f(x) = join{ r(y) : y <=_c x }, precomputed. Covers adversarially shaped
/// instances but only at small |L|.
std::unique_ptr<MonotoneOracle> gen_closure_monotone(std::uint64_t seed,
                                                     const BoxLattice& box);

/// Monotone closure of an explicit raw map given by rank: raw[r] is the image
/// of box.unrank(r). Exposed for tests that plant specific shapes.
std::unique_ptr<MonotoneOracle> closure_of_raw_map(const BoxLattice& box,
                                                   const std::vector<Point>& raw);

/// Ground truth: every x in L with f(x) = x, sorted by rank. Talks to the
/// oracle directly (not through a session) since it visits all of L anyway.
std::vector<Point> brute_force_fixed_points(MonotoneOracle& oracle,
                                            const BoxLattice& box);

/// Seeded lexicographically monotone instance: a nondecreasing map on the
/// rank line composed with unrank. For exercising the total-order solver.
std::unique_ptr<MonotoneOracle> gen_lex_monotone(std::uint64_t seed,
                                                 const BoxLattice& box);

}  // namespace tarski

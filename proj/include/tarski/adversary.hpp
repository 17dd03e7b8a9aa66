#pragma once

#include <optional>
#include <set>
#include <vector>

#include "tarski/oracle.hpp"

namespace tarski {

inline constexpr Size128 kCompletionCheckMaxPoints = Size128(1) << 16;

/// Largest 0-based index i with x_i > 0. Requires x >= 0 and x != 0.
std::size_t max_positive_index(const Point& x);

/// The 1-D lower-bound adversary on {0, ..., N-1}: answers f(0) = 0 and
/// f(x) = x - 1 for x >= 1, recording every point it was asked.
class LineAdversary final : public MonotoneOracle {
 public:
  explicit LineAdversary(Coord num_points);

  Point raw_eval(const Point& x) override;

  const std::set<Coord>& queried() const { return queried_; }

 private:
  std::set<Coord> queried_;
};

/// Some unqueried x* >= 1 where pinning f(x*) = x* (keeping every given
/// answer) still extends to an order-preserving map, verified by building the
/// completion and checking it end to end; nullopt when every point has been
/// asked and no second fixed point can hide.
std::optional<Point> line_can_hide_second(const LineAdversary& adversary);

/// The componentwise lower-bound adversary on [0, (N_1, ..., N_d)]:
/// f(0) = 0 and f(x) = x - e_maxindex(x) otherwise, recording queries.
class AuxAdversary final : public MonotoneOracle {
 public:
  explicit AuxAdversary(std::vector<Coord> upper);

  Point raw_eval(const Point& x) override;

  const std::set<std::vector<Coord>>& queried() const { return queried_; }

 private:
  std::set<std::vector<Coord>> queried_;
};

/// An unqueried nonzero x where pinning f(x) = x, keeping the aux answers on
/// every point already asked, admits a monotone completion of the whole
/// lattice. The completion is built explicitly (pointwise join of the pinned
/// answers from below) and verified exhaustively. Capacity-gated.
std::optional<Point> aux_can_hide_second(const AuxAdversary& adversary);

}  // namespace tarski

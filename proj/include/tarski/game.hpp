#pragma once

#include <array>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tarski/box.hpp"
#include "tarski/cnf.hpp"
#include "tarski/rational.hpp"

namespace tarski {

/// d-player game over integer strategy ranges S_i = {low_i, ..., high_i}.
/// Payoffs come either from explicit utility tables or from an abstract
/// least-best-response oracle whose i-th component, by contract, depends only
/// on the opponents' strategies (enforced downstream by memoization).
class Game {
 public:
  using ResponseFn = std::function<Coord(std::size_t player, const Point& profile)>;

  /// utilities[i] is player i's table, flat in strategy-box rank order
  /// (player 1's strategy most significant). Increasing differences are
  /// validated here whenever the quadruple count fits the enumeration gate.
  static Game from_tables(const std::vector<std::array<Coord, 2>>& ranges,
                          std::vector<std::vector<Rational>> utilities);

  static Game from_best_response(const std::vector<std::array<Coord, 2>>& ranges,
                                 ResponseFn response);

  /// The uniqueness-hardness game: S_i = {-1, ..., 2^n - 1}, best responses
  /// reduce the opponents to the diagonal of their maximum and follow the
  /// 1-D satisfiability rule there. Needs at least three players.
  static Game from_cnf(const CnfFormula& f, std::size_t players);

  static Game from_json_text(const std::string& text, const std::string& base_dir = "");
  static Game from_json_file(const std::string& path);

  std::size_t players() const { return box_.dim(); }
  const BoxLattice& strategy_box() const { return box_; }
  bool has_tables() const { return !utils_.empty(); }

  const Rational& utility(std::size_t player, const Point& profile) const;

  /// Least maximizer of u_player(., profile_{-player}) for table games, or
  /// the raw response callback otherwise. Pure; sessions add memoization.
  Coord least_response(std::size_t player, const Point& profile) const;

 private:
  Game(BoxLattice box, std::vector<std::vector<Rational>> utils, ResponseFn response)
      : box_(std::move(box)), utils_(std::move(utils)), response_(std::move(response)) {}

  BoxLattice box_;
  std::vector<std::vector<Rational>> utils_;
  ResponseFn response_;
};

/// Free-function spelling of the least best response.
inline Coord least_best_response(const Game& game, std::size_t player,
                                 const Point& profile) {
  return game.least_response(player, profile);
}

struct IdViolation {
  std::size_t player;
  Coord s_i, s_i_prime;
  Point opp_low, opp_high;  // full profiles carrying s_{-i} and s'_{-i}
};

/// Exhaustive check of u(s'_i, s'_{-i}) - u(s_i, s'_{-i}) >=
/// u(s'_i, s_{-i}) - u(s_i, s_{-i}) over all quadruples. Table games only;
/// gated to about 10^6 quadruples.
std::vector<IdViolation> check_increasing_differences(const Game& game);

/// Memoized least-best-response access. Distinct full-profile queries are the
/// query currency; per-(player, opponents) memoization both deduplicates and
/// enforces the consistency contract (an answer, once given, binds).
class BestResponseSession {
 public:
  explicit BestResponseSession(const Game& game);

  const Point& respond(const Point& profile);
  std::size_t distinct_profiles() const { return count_; }

 private:
  const Game& game_;
  std::unordered_map<Point, Point, PointHash> profile_memo_;
  std::vector<std::unordered_map<Point, Coord, PointHash>> component_memo_;
  std::size_t count_ = 0;
};

struct NashResult {
  Point profile;
  std::size_t queries = 0;  // distinct best-response profile queries
};

/// Pure Nash equilibrium via the best-response machinery: the last player is
/// eliminated by consistency (two queries pin their response), and the
/// induced map over the remaining players is solved with the componentwise
/// fixed-point machinery. Two-player games cost at most
/// 2 ceil(log2 N_1) + 2 distinct queries. The returned profile is verified:
/// the least best response maps it to itself.
NashResult solve_nash(const Game& game);

/// Ground truth. Table games: no profitable unilateral deviation, checked
/// exhaustively. Oracle games: fixed profiles of the least best response
/// (a subset semantics). Sorted by strategy-box rank.
std::vector<Point> brute_force_nash(const Game& game);

/// Seeded oracle-variant game with consistent monotone best responses:
/// player i answers clamp(c_i + sum_{j != i} w_ij * step_ij(s_j)), a function
/// of the opponents alone and nondecreasing in them. Lazy; scales to huge
/// strategy ranges. Deterministic per (seed, ranges).
Game gen_structured_br_game(std::uint64_t seed,
                            const std::vector<std::array<Coord, 2>>& ranges);

}  // namespace tarski

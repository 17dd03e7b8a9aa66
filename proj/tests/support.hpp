#pragma once

// Seeded fixture generators shared by the unit suites and the acceptance
// runner. Everything here is deterministic per seed.

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "tarski/game.hpp"
#include "tarski/generators.hpp"
#include "tarski/polytope.hpp"

namespace tarski::testing {

inline Game structured_br_game(std::uint64_t seed,
                               const std::vector<std::array<Coord, 2>>& ranges) {
  return gen_structured_br_game(seed, ranges);
}

/// Random supermodular utility tables: u_i(s) = own_i(s_i) + sum_j w_ij s_i s_j
/// + noise_i(s_{-i}) with w_ij >= 0, which has increasing differences.
inline Game random_supermodular_table_game(std::uint64_t seed,
                                           const std::vector<std::array<Coord, 2>>& ranges) {
  const std::size_t d = ranges.size();
  std::mt19937_64 rng(seed);
  std::vector<Coord> lo, hi;
  for (const auto& r : ranges) {
    lo.push_back(r[0]);
    hi.push_back(r[1]);
  }
  BoxLattice box{Point(lo), Point(hi)};
  std::vector<std::vector<Rational>> tables;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Coord> w(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i) w[j] = static_cast<Coord>(rng() % 3);
    }
    std::vector<Coord> own(static_cast<std::size_t>(box.side_count(i)));
    for (auto& v : own) v = static_cast<Coord>(rng() % 41) - 20;
    std::vector<Rational> flat;
    flat.reserve(static_cast<std::size_t>(box.size()));
    for (BoxIterator it(box); it.valid(); ++it) {
      const Point& s = *it;
      __int128 u = own[static_cast<std::size_t>(s[i] - box.lower()[i])];
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) u += static_cast<__int128>(w[j]) * s[i] * s[j];
      }
      // opponent-only noise cannot break increasing differences
      std::uint64_t h = 1469598103934665603ull ^ (seed * 0x9e3779b97f4a7c15ull);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        h ^= static_cast<std::uint64_t>(s[j]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      u += static_cast<Coord>(h % 13);
      flat.emplace_back(static_cast<long long>(u));
    }
    tables.push_back(std::move(flat));
  }
  return Game::from_tables(ranges, std::move(tables));
}

/// Row-structured bounded polytope with a guaranteed rational interior point:
/// box rows on every coordinate plus a few extra rows (one positive entry at
/// most) whose right-hand sides leave slack at the interior point.
inline Polytope random_row_structured_polytope(std::uint64_t seed, std::size_t n,
                                               Coord half_side) {
  std::mt19937_64 rng(seed);
  std::vector<RatVec> a;
  RatVec b;
  RatVec interior(n);
  for (std::size_t j = 0; j < n; ++j) {
    Coord lo = -half_side + static_cast<Coord>(rng() % 3);
    Coord hi = lo + 2 + static_cast<Coord>(rng() % (2 * half_side - 1));
    // fractional bounds keep hull floors/ceilings honest
    Rational flo = Rational(3 * lo + 1 + static_cast<Coord>(rng() % 2), 3);
    Rational fhi = Rational(3 * hi + static_cast<Coord>(rng() % 2), 3);
    RatVec up(n, Rational(0)), down(n, Rational(0));
    up[j] = 1;
    down[j] = -1;
    a.push_back(up);
    b.push_back(fhi);
    a.push_back(down);
    b.push_back(-flo);
    interior[j] = (flo + fhi) / 2;
  }
  std::size_t extras = 1 + rng() % 3;
  for (std::size_t e = 0; e < extras; ++e) {
    RatVec row(n, Rational(0));
    std::size_t pos = rng() % n;
    row[pos] = Rational(1 + static_cast<Coord>(rng() % 3),
                        1 + static_cast<Coord>(rng() % 2));
    for (std::size_t j = 0; j < n; ++j) {
      if (j != pos && rng() % 2 == 0) {
        row[j] = Rational(-static_cast<Coord>(rng() % 3),
                          1 + static_cast<Coord>(rng() % 2));
      }
    }
    Rational at_interior(0);
    for (std::size_t j = 0; j < n; ++j) at_interior += row[j] * interior[j];
    b.push_back(at_interior + Rational(1 + static_cast<Coord>(rng() % 4), 3));
    a.push_back(std::move(row));
  }
  return Polytope(std::move(a), std::move(b));
}

/// Polytope whose per-coordinate minima are all non-integral (the premise
/// behind the lexicographic map's strict bounds); reseeds until found.
inline Polytope fractional_min_polytope(std::uint64_t seed, std::size_t n,
                                        Coord half_side) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Polytope P = random_row_structured_polytope(seed + 1000 * attempt, n, half_side);
    LatticeHull hull = build_hull(P, OrderRelation::Lexicographic);
    bool ok = hull.box.has_value();
    for (std::size_t j = 0; ok && j < n; ++j) {
      if (Rational(floor_rat(hull.x_min[j])) == hull.x_min[j]) ok = false;
    }
    if (ok) return P;
  }
  throw std::logic_error("fractional_min_polytope: no suitable instance found");
}

}  // namespace tarski::testing

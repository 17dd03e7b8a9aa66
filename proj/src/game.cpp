#include "tarski/game.hpp"

#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tarski/generators.hpp"
#include "tarski/oracle.hpp"
#include "tarski/sat_reduce.hpp"
#include "tarski/solver.hpp"

namespace tarski {

namespace {

constexpr Size128 kNashBruteForceMaxProfiles = Size128(1) << 20;
constexpr Size128 kIdCheckMaxQuadruples = 1'000'000;

BoxLattice ranges_to_box(const std::vector<std::array<Coord, 2>>& ranges) {
  if (ranges.empty()) throw UsageError("game needs at least one player");
  std::vector<Coord> lo, hi;
  for (const auto& r : ranges) {
    lo.push_back(r[0]);
    hi.push_back(r[1]);
  }
  return BoxLattice(Point(std::move(lo)), Point(std::move(hi)));
}

Point with_coordinate(const Point& profile, std::size_t i, Coord v) {
  Point p = profile;
  p[i] = v;
  return p;
}

// Number of (player, s_i < s'_i, s_-i <= s'_-i) quadruples the increasing-
// differences check enumerates, saturating just past the gate.
Size128 id_quadruple_count(const BoxLattice& box) {
  Size128 total = 0;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    Size128 q = 1;
    for (std::size_t j = 0; j < box.dim(); ++j) {
      Size128 nj = box.side_count(j);
      q *= j == i ? nj * (nj - 1) / 2 : nj * (nj + 1) / 2;
      if (q > kIdCheckMaxQuadruples) break;
    }
    total += q;
    if (total > kIdCheckMaxQuadruples) return total;
  }
  return total;
}

}  // namespace

Game Game::from_tables(const std::vector<std::array<Coord, 2>>& ranges,
                       std::vector<std::vector<Rational>> utilities) {
  BoxLattice box = ranges_to_box(ranges);
  if (utilities.size() != box.dim()) {
    throw UsageError("game: need one utility table per player");
  }
  if (box.size() > kNashBruteForceMaxProfiles) {
    throw CapacityError("game: table variant gated to 2^20 profiles");
  }
  for (const auto& table : utilities) {
    if (table.size() != static_cast<std::size_t>(box.size())) {
      throw UsageError("game: table size " + std::to_string(table.size()) +
                       " does not match profile count " + to_string(box.size()));
    }
  }
  Game game(std::move(box), std::move(utilities), nullptr);
  // Validate increasing differences when the enumeration is affordable;
  // larger tables are the caller's responsibility (the check is exposed).
  if (id_quadruple_count(game.strategy_box()) <= kIdCheckMaxQuadruples) {
    auto violations = check_increasing_differences(game);
    if (!violations.empty()) {
      const auto& v = violations.front();
      throw UsageError("game: utilities lack increasing differences for player " +
                       std::to_string(v.player + 1) + " at s_i=" + std::to_string(v.s_i) +
                       ", s_i'=" + std::to_string(v.s_i_prime) + ", s_-i=" +
                       to_string(v.opp_low) + ", s_-i'=" + to_string(v.opp_high));
    }
  }
  return game;
}

Game Game::from_best_response(const std::vector<std::array<Coord, 2>>& ranges,
                              ResponseFn response) {
  if (!response) throw UsageError("game: null best-response callback");
  return Game(ranges_to_box(ranges), {}, std::move(response));
}

Game Game::from_cnf(const CnfFormula& f, std::size_t players) {
  f.validate();
  if (players < 3) {
    throw UsageError("game_from_cnf: the construction needs at least three players");
  }
  if (f.num_vars < 1 || f.num_vars > 20) {
    throw CapacityError("game_from_cnf: variable count gated to [1, 20]");
  }
  Coord top = (Coord(1) << f.num_vars) - 1;
  std::vector<std::array<Coord, 2>> ranges(players, {-1, top});
  CnfFormula formula = f;
  auto fn = [formula](std::size_t player, const Point& s) -> Coord {
    Coord j = -1;
    for (std::size_t k = 0; k < s.dim(); ++k) {
      if (k != player && s[k] > j) j = s[k];
    }
    if (j == -1) return -1;
    return eval_cnf(formula, value_to_bits(j, formula.num_vars)) ? j : j - 1;
  };
  return from_best_response(ranges, std::move(fn));
}

Game Game::from_json_text(const std::string& text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("game JSON: ") + e.what());
  }
  if (!j.contains("players") || !j.contains("ranges")) {
    throw UsageError("game JSON needs \"players\" and \"ranges\"");
  }
  std::size_t players = j.at("players").get<std::size_t>();
  std::vector<std::array<Coord, 2>> ranges;
  for (const auto& r : j.at("ranges")) {
    if (!r.is_array() || r.size() != 2) {
      throw UsageError("game JSON: each range must be [low, high]");
    }
    ranges.push_back({r[0].get<Coord>(), r[1].get<Coord>()});
  }
  if (ranges.size() != players) {
    throw UsageError("game JSON: ranges count does not match player count");
  }
  if (j.contains("cnf")) {
    std::string path = j.at("cnf").get<std::string>();
    if (!base_dir.empty() && !path.empty() && path[0] != '/') {
      path = base_dir + "/" + path;
    }
    return from_cnf(parse_dimacs_file(path), players);
  }
  if (!j.contains("tables")) {
    throw UsageError("game JSON needs either \"tables\" or \"cnf\"");
  }
  BoxLattice box = ranges_to_box(ranges);
  std::vector<std::vector<Rational>> utilities;
  for (const auto& table : j.at("tables")) {
    std::vector<Rational> flat;
    flat.reserve(static_cast<std::size_t>(box.size()));
    // Nested player-major arrays flatten depth-first straight into rank order.
    std::function<void(const nlohmann::json&, std::size_t)> walk =
        [&](const nlohmann::json& node, std::size_t depth) {
          if (depth == box.dim()) {
            if (node.is_string()) {
              flat.push_back(parse_rational(node.get<std::string>()));
            } else if (node.is_number_integer()) {
              flat.push_back(Rational(node.get<long long>()));
            } else {
              throw UsageError("game JSON: utilities must be integers or \"p/q\" strings");
            }
            return;
          }
          if (!node.is_array() ||
              node.size() != static_cast<std::size_t>(box.side_count(depth))) {
            throw UsageError("game JSON: table shape does not match ranges");
          }
          for (const auto& child : node) walk(child, depth + 1);
        };
    walk(table, 0);
    utilities.push_back(std::move(flat));
  }
  return from_tables(ranges, std::move(utilities));
}

Game Game::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto slash = path.find_last_of('/');
  return from_json_text(buf.str(), slash == std::string::npos ? "" : path.substr(0, slash));
}

const Rational& Game::utility(std::size_t player, const Point& profile) const {
  if (!has_tables()) throw UsageError("game: oracle variant has no utility tables");
  if (player >= players()) throw UsageError("game: player index out of range");
  return utils_[player][static_cast<std::size_t>(box_.rank(profile))];
}

Coord Game::least_response(std::size_t player, const Point& profile) const {
  if (player >= players()) throw UsageError("game: player index out of range");
  if (!box_.contains(profile)) {
    throw UsageError("game: profile " + to_string(profile) + " outside strategy ranges");
  }
  if (has_tables()) {
    Coord best_s = box_.lower()[player];
    const Rational* best_u = &utility(player, with_coordinate(profile, player, best_s));
    for (Coord s = best_s + 1; s <= box_.upper()[player]; ++s) {
      const Rational& u = utility(player, with_coordinate(profile, player, s));
      if (u > *best_u) {  // strict: ties stay with the least maximizer
        best_u = &u;
        best_s = s;
      }
    }
    return best_s;
  }
  return response_(player, profile);
}

std::vector<IdViolation> check_increasing_differences(const Game& game) {
  if (!game.has_tables()) {
    throw UsageError("check_increasing_differences: table games only");
  }
  const BoxLattice& box = game.strategy_box();
  const std::size_t d = game.players();
  if (d == 1) return {};  // no opponents, the condition is vacuous

  if (id_quadruple_count(box) > kIdCheckMaxQuadruples) {
    throw CapacityError("check_increasing_differences: more than 10^6 quadruples");
  }

  std::vector<IdViolation> violations;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Coord> opp_lo, opp_hi;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      opp_lo.push_back(box.lower()[j]);
      opp_hi.push_back(box.upper()[j]);
    }
    auto embed = [&](const Point& opp, Coord si) {
      std::vector<Coord> full(d);
      std::size_t k = 0;
      for (std::size_t j = 0; j < d; ++j) {
        full[j] = j == i ? si : opp[k++];
      }
      return Point(std::move(full));
    };
    BoxLattice opp_box{Point(opp_lo), Point(opp_hi)};
    for (BoxIterator t(opp_box); t.valid(); ++t) {
      BoxLattice upper(*t, opp_box.upper());
      for (BoxIterator t2(upper); t2.valid(); ++t2) {
        for (Coord si = box.lower()[i]; si < box.upper()[i]; ++si) {
          for (Coord sp = si + 1; sp <= box.upper()[i]; ++sp) {
            const Rational& a = game.utility(i, embed(*t2, sp));
            const Rational& b = game.utility(i, embed(*t2, si));
            const Rational& c = game.utility(i, embed(*t, sp));
            const Rational& e = game.utility(i, embed(*t, si));
            if (a - b < c - e) {
              violations.push_back({i, si, sp, embed(*t, si), embed(*t2, si)});
            }
          }
        }
      }
    }
  }
  return violations;
}

BestResponseSession::BestResponseSession(const Game& game)
    : game_(game), component_memo_(game.players()) {}

const Point& BestResponseSession::respond(const Point& profile) {
  auto hit = profile_memo_.find(profile);
  if (hit != profile_memo_.end()) return hit->second;

  const BoxLattice& box = game_.strategy_box();
  if (!box.contains(profile)) {
    throw UsageError("respond: profile " + to_string(profile) + " outside strategy ranges");
  }
  ++count_;
  std::vector<Coord> out(game_.players());
  for (std::size_t i = 0; i < game_.players(); ++i) {
    Point masked = with_coordinate(profile, i, box.lower()[i]);
    auto& memo = component_memo_[i];
    auto it = memo.find(masked);
    if (it != memo.end()) {
      out[i] = it->second;  // the first answer binds: consistency by memo
      continue;
    }
    Coord r = game_.least_response(i, profile);
    if (r < box.lower()[i] || r > box.upper()[i]) {
      throw ContractViolation(
          "best response for player " + std::to_string(i + 1) + " at " +
              to_string(profile) + " is " + std::to_string(r) + ", outside its range",
          {{profile, Point::filled(1, r)}});
    }
    memo.emplace(std::move(masked), r);
    out[i] = r;
  }
  auto [pos, inserted] = profile_memo_.emplace(profile, Point(std::move(out)));
  return pos->second;
}

NashResult solve_nash(const Game& game) {
  const std::size_t d = game.players();
  const BoxLattice& box = game.strategy_box();
  BestResponseSession session(game);

  if (d == 1) {
    Point start = box.lower();
    Point a = session.respond(start);
    const Point& check = session.respond(a);
    if (check != a) {
      throw ContractViolation("single-player best response is not consistent",
                              {{start, a}, {a, check}});
    }
    return {a, session.distinct_profiles()};
  }

  std::vector<Coord> glo(box.lower().coords().begin(), box.lower().coords().end() - 1);
  std::vector<Coord> ghi(box.upper().coords().begin(), box.upper().coords().end() - 1);
  BoxLattice gbox((Point(glo)), Point(ghi));

  Coord y_last = box.lower()[d - 1];
  std::unordered_map<Point, Coord, PointHash> y_for;
  // Two queries per probe: the first reveals the last player's response to
  // the probe (it depends only on the others), the second re-queries at that
  // response, where consistency pins the last coordinate.
  CallbackOracle g(gbox, [&](const Point& x) {
    std::vector<Coord> s1(x.coords());
    s1.push_back(y_last);
    Point r1 = session.respond(Point(std::move(s1)));
    Coord y2 = r1[d - 1];
    std::vector<Coord> s2(x.coords());
    s2.push_back(y2);
    const Point& r2 = session.respond(Point(std::move(s2)));
    y_for[x] = y2;
    y_last = y2;
    return Point(std::vector<Coord>(r2.coords().begin(), r2.coords().end() - 1));
  });
  OracleSession gsession(g);
  SolveResult res = solve_componentwise(gsession, gbox);

  std::vector<Coord> full(res.fixed_point.coords());
  full.push_back(y_for.at(res.fixed_point));
  Point profile((std::move(full)));
  const Point& check = session.respond(profile);
  if (check != profile) {
    throw ContractViolation("best response is not consistent at the returned profile",
                            {{profile, check}});
  }
  return {profile, session.distinct_profiles()};
}

Game gen_structured_br_game(std::uint64_t seed,
                            const std::vector<std::array<Coord, 2>>& ranges) {
  const std::size_t d = ranges.size();
  std::mt19937_64 rng(seed);
  auto weights =
      std::make_shared<std::vector<std::vector<Coord>>>(d, std::vector<Coord>(d, 0));
  auto steps = std::make_shared<std::vector<std::vector<StepFunction>>>(
      d, std::vector<StepFunction>(d));
  auto offsets = std::make_shared<std::vector<Coord>>(d, 0);
  auto bounds = std::make_shared<std::vector<std::array<Coord, 2>>>(ranges);
  for (std::size_t i = 0; i < d; ++i) {
    Coord range = ranges[i][1] - ranges[i][0];
    Coord total_w = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (j == i) continue;
      Coord w = 1 + static_cast<Coord>(rng() % 2);
      (*weights)[i][j] = w;
      total_w += w;
    }
    Coord span = range / std::max<Coord>(total_w, 1);
    __int128 reach = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if ((*weights)[i][j] == 0) continue;
      StepFunction s;
      s.base_value = 0;
      std::size_t breaks = 3 + rng() % 8;
      std::set<Coord> ts;
      Coord lo = ranges[j][0], hi = ranges[j][1];
      if (hi > lo) {
        for (std::size_t t = 0; t < 4 * breaks && ts.size() < breaks; ++t) {
          ts.insert(lo + 1 +
                    static_cast<Coord>(rng() % static_cast<std::uint64_t>(hi - lo)));
        }
      }
      std::vector<Coord> vals;
      for (std::size_t v = 0; v < ts.size(); ++v) {
        vals.push_back(static_cast<Coord>(rng() % static_cast<std::uint64_t>(span + 1)));
      }
      std::sort(vals.begin(), vals.end());
      s.thresholds.assign(ts.begin(), ts.end());
      s.values = std::move(vals);
      reach += static_cast<__int128>((*weights)[i][j]) *
               (s.values.empty() ? 0 : s.values.back());
      (*steps)[i][j] = std::move(s);
    }
    __int128 c = ranges[i][0] + (static_cast<__int128>(range) - reach) / 2;
    if (range > 0) {
      c += static_cast<__int128>(rng() % static_cast<std::uint64_t>(range / 2 + 1)) -
           range / 4;
    }
    (*offsets)[i] = static_cast<Coord>(
        std::max<__int128>(ranges[i][0] - reach, std::min<__int128>(c, ranges[i][1])));
  }
  Game::ResponseFn fn = [=](std::size_t i, const Point& s) -> Coord {
    __int128 acc = (*offsets)[i];
    for (std::size_t j = 0; j < s.dim(); ++j) {
      if (j == i || (*weights)[i][j] == 0) continue;
      acc += static_cast<__int128>((*weights)[i][j]) * (*steps)[i][j].eval(s[j]);
    }
    if (acc < (*bounds)[i][0]) acc = (*bounds)[i][0];
    if (acc > (*bounds)[i][1]) acc = (*bounds)[i][1];
    return static_cast<Coord>(acc);
  };
  return Game::from_best_response(ranges, std::move(fn));
}

std::vector<Point> brute_force_nash(const Game& game) {
  const BoxLattice& box = game.strategy_box();
  if (box.size() > kNashBruteForceMaxProfiles) {
    throw CapacityError("brute_force_nash: gated to 2^20 profiles");
  }
  std::vector<Point> result;
  if (game.has_tables()) {
    for (BoxIterator it(box); it.valid(); ++it) {
      bool nash = true;
      for (std::size_t i = 0; i < game.players() && nash; ++i) {
        const Rational& here = game.utility(i, *it);
        for (Coord s = box.lower()[i]; s <= box.upper()[i]; ++s) {
          if (s == (*it)[i]) continue;
          if (game.utility(i, with_coordinate(*it, i, s)) > here) {
            nash = false;
            break;
          }
        }
      }
      if (nash) result.push_back(*it);
    }
    return result;
  }
  BestResponseSession session(game);
  for (BoxIterator it(box); it.valid(); ++it) {
    if (session.respond(*it) == *it) result.push_back(*it);
  }
  return result;
}

}  // namespace tarski

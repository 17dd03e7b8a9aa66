#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "tarski/game.hpp"

using namespace tarski;

namespace {

// u1 = u2 = s1*s2 on {0,1,2} x {0,1}.
Game product_game() {
  std::vector<std::array<Coord, 2>> ranges = {{0, 2}, {0, 1}};
  std::vector<Rational> u;
  BoxLattice box(Point{0, 0}, Point{2, 1});
  for (BoxIterator it(box); it.valid(); ++it) {
    u.emplace_back(static_cast<long long>((*it)[0] * (*it)[1]));
  }
  return Game::from_tables(ranges, {u, u});
}

bool in_set(const std::vector<Point>& set, const Point& p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

}  // namespace

TEST_CASE("increasing differences: product form passes, sign flip fails") {
  CHECK(check_increasing_differences(product_game()).empty());

  std::vector<std::array<Coord, 2>> ranges = {{0, 2}, {0, 1}};
  std::vector<Rational> u, neg;
  BoxLattice box(Point{0, 0}, Point{2, 1});
  for (BoxIterator it(box); it.valid(); ++it) {
    u.emplace_back(static_cast<long long>((*it)[0] * (*it)[1]));
    neg.emplace_back(static_cast<long long>(-(*it)[0] * (*it)[1]));
  }
  CHECK_THROWS_AS(Game::from_tables(ranges, {neg, u}), UsageError);

  std::vector<Rational> flat(6, Rational(7));
  Game constant = Game::from_tables(ranges, {flat, flat});
  CHECK(check_increasing_differences(constant).empty());
}

TEST_CASE("least best response breaks ties toward the smallest strategy") {
  Game g = product_game();
  CHECK(least_best_response(g, 0, {0, 0}) == 0);  // all tie at zero
  CHECK(least_best_response(g, 0, {0, 1}) == 2);  // strict maximizer
  CHECK(least_best_response(g, 1, {2, 0}) == 1);
}

TEST_CASE("best-response oracle from a cnf formula") {
  // F = (x1 or x2), two variables, three players
  CnfFormula f{2, {{{1, 2, 2}}}, ""};
  Game g = Game::from_cnf(f, 3);
  CHECK(least_best_response(g, 0, {0, 3, 3}) == 3);  // F(1,1) holds
  CHECK(least_best_response(g, 0, {0, -1, -1}) == -1);
  CHECK(least_best_response(g, 1, {0, 0, 0}) == -1);  // F(0,0) fails: 0 -> -1
  CHECK_THROWS_AS(Game::from_cnf(f, 2), UsageError);
}

TEST_CASE("solve_nash on the product game: verified equilibrium, in brute force") {
  Game g = product_game();
  auto nash = brute_force_nash(g);
  CHECK(nash == std::vector<Point>{Point{0, 0}, Point{2, 1}});

  NashResult r = solve_nash(g);
  CHECK(in_set(nash, r.profile));
  CHECK(r.profile == Point{2, 1});  // the probe dance walks up from the middle

  // the all-zero profile is the least fixed profile of the best response
  BestResponseSession session(g);
  CHECK(session.respond({0, 0}) == Point{0, 0});
}

TEST_CASE("constant utilities: least tie-breaking selects the bottom profile") {
  std::vector<std::array<Coord, 2>> ranges = {{1, 4}, {0, 3}};
  std::vector<Rational> flat(16, Rational(0));
  Game g = Game::from_tables(ranges, {flat, flat});
  NashResult r = solve_nash(g);
  CHECK(r.profile == Point{1, 0});
  CHECK(brute_force_nash(g).size() == 16);  // nobody can deviate profitably
}

TEST_CASE("single-player game: dominant strategy") {
  std::vector<std::array<Coord, 2>> ranges = {{0, 5}};
  std::vector<Rational> u;
  for (Coord s = 0; s <= 5; ++s) u.emplace_back(static_cast<long long>(s));
  Game g = Game::from_tables(ranges, {u});
  auto nash = brute_force_nash(g);
  REQUIRE(nash.size() == 1);
  CHECK(nash[0] == Point{5});
  CHECK(solve_nash(g).profile == Point{5});
}

TEST_CASE("hardness-game structure at n = 2, d = 3") {
  // satisfiable formula: non-bottom all-equal equilibria exist
  CnfFormula sat{2, {{{1, 2, 2}}}, ""};
  Game gs = Game::from_cnf(sat, 3);
  auto eq = brute_force_nash(gs);
  REQUIRE(!eq.empty());
  bool has_nonbottom = false;
  for (const Point& e : eq) {
    for (std::size_t i = 1; i < e.dim(); ++i) CHECK(e[i] == e[0]);
    if (e != Point{-1, -1, -1}) has_nonbottom = true;
  }
  CHECK(has_nonbottom);

  NashResult r = solve_nash(gs);
  CHECK(in_set(eq, r.profile));

  // unsatisfiable formula: only the bottom remains
  CnfFormula unsat{2, {{{1, 1, 1}}, {{-1, -1, -1}}}, ""};
  Game gu = Game::from_cnf(unsat, 3);
  auto eq_u = brute_force_nash(gu);
  REQUIRE(eq_u.size() == 1);
  CHECK(eq_u[0] == Point{-1, -1, -1});

  // a satisfying index is an equilibrium on the diagonal: F(11) with j* = 3
  BestResponseSession session(gs);
  CHECK(session.respond({3, 3, 3}) == Point{3, 3, 3});
}

TEST_CASE("two-player budget: at most 2 ceil(log2 N1) + 2 response queries") {
  for (Coord n1 : {16, 64, 256, 1024}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      std::vector<std::array<Coord, 2>> ranges = {{0, n1 - 1}, {0, 2 * n1 - 1}};
      Game g = testing::structured_br_game(seed, ranges);
      NashResult r = solve_nash(g);
      std::size_t budget =
          2 * static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n1)))) + 2;
      CHECK(r.queries <= budget);
      BestResponseSession check(g);
      CHECK(check.respond(r.profile) == r.profile);
    }
  }
}

TEST_CASE("least best responses are monotone for supermodular tables") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    std::vector<std::array<Coord, 2>> ranges = {{0, 4}, {0, 3}};
    Game g = testing::random_supermodular_table_game(seed, ranges);
    BestResponseSession session(g);
    const BoxLattice& box = g.strategy_box();
    for (BoxIterator a(box); a.valid(); ++a) {
      for (BoxIterator b(box); b.valid(); ++b) {
        if (leq(OrderRelation::Componentwise, *a, *b)) {
          CHECK(leq(OrderRelation::Componentwise, session.respond(*a),
                    session.respond(*b)));
        }
      }
    }
  }
}

TEST_CASE("solve_nash is a true Nash on random supermodular tables") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    std::vector<std::array<Coord, 2>> ranges = {{0, 9}, {0, 7}};
    Game g = testing::random_supermodular_table_game(seed, ranges);
    NashResult r = solve_nash(g);
    CHECK(in_set(brute_force_nash(g), r.profile));
  }
}

TEST_CASE("three or more players via slice recursion") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    std::vector<std::array<Coord, 2>> ranges = {{0, 7}, {0, 9}, {0, 11}};
    Game g = testing::structured_br_game(seed, ranges);
    NashResult r = solve_nash(g);
    BestResponseSession check(g);
    CHECK(check.respond(r.profile) == r.profile);
  }
  // with four players too
  std::vector<std::array<Coord, 2>> ranges4 = {{0, 3}, {0, 4}, {0, 5}, {0, 6}};
  Game g4 = testing::structured_br_game(2, ranges4);
  NashResult r4 = solve_nash(g4);
  BestResponseSession check4(g4);
  CHECK(check4.respond(r4.profile) == r4.profile);
}

TEST_CASE("game JSON: tables, rationals, and shape validation") {
  const char* text = R"({
    "players": 2,
    "ranges": [[0, 2], [0, 1]],
    "tables": [
      [[0, 0], [0, 1], [0, 2]],
      [[0, 0], [0, "1/2"], [0, 1]]
    ]
  })";
  Game g = Game::from_json_text(text);
  CHECK(g.players() == 2);
  CHECK(g.utility(1, {1, 1}) == Rational(1, 2));
  CHECK(g.utility(0, {2, 1}) == Rational(2));

  const char* bad = R"({"players": 2, "ranges": [[0,2],[0,1]],
                        "tables": [[[0],[0],[0]], [[0,0],[0,0],[0,0]]]})";
  CHECK_THROWS_AS(Game::from_json_text(bad), UsageError);
}

TEST_CASE("game JSON: cnf-backed oracle variant") {
  Game g = Game::from_json_file(std::string(FIXTURES_DIR) + "/cnf_game.json");
  CHECK(g.players() == 3);
  CHECK_FALSE(g.has_tables());
  CHECK(g.strategy_box() == BoxLattice(Point{-1, -1, -1}, Point{3, 3, 3}));
  NashResult r = solve_nash(g);
  BestResponseSession check(g);
  CHECK(check.respond(r.profile) == r.profile);
}

TEST_CASE("oracle-variant brute force uses the fixed-profile semantics") {
  CnfFormula sat{1, {{{1, 1, 1}}}, ""};
  Game g = Game::from_cnf(sat, 3);  // S_i = {-1, 0, 1}
  auto eq = brute_force_nash(g);
  // bottom and the satisfying diagonal value 1
  CHECK(eq == std::vector<Point>{Point{-1, -1, -1}, Point{1, 1, 1}});
}

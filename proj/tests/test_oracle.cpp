#include <doctest.h>

#include <random>

#include "tarski/generators.hpp"
#include "tarski/oracle.hpp"

using namespace tarski;

namespace {

// Drives every lattice point through one session so the log holds the whole
// function; the monotonicity check is then exhaustive over comparable pairs.
std::vector<MonotoneViolation> exhaustive_violations(MonotoneOracle& oracle,
                                                     OrderRelation order) {
  OracleSession session(oracle);
  for (BoxIterator it(oracle.box()); it.valid(); ++it) session.query(*it);
  return verify_monotone_on_log(session.log(), order);
}

}  // namespace

TEST_CASE("query: identity, constant, memo contract") {
  BoxLattice box(Point{0, 0}, Point{7, 7});
  IdentityOracle id(box);
  OracleSession s(id);
  CHECK(s.query({3, 4}) == Point{3, 4});

  ConstantOracle c(box, Point{2, 5});
  OracleSession sc(c);
  CHECK(sc.query({0, 0}) == Point{2, 5});
  CHECK(sc.query({7, 7}) == Point{2, 5});

  CHECK(s.query({3, 4}) == Point{3, 4});
  CHECK(s.distinct_queries() == 1);  // second ask was a memo hit
  CHECK(s.log().count() == 1);
}

TEST_CASE("query errors: out-of-box query and out-of-box answer") {
  BoxLattice box(Point{0}, Point{3});
  IdentityOracle id(box);
  OracleSession s(id);
  CHECK_THROWS_AS(s.query({9}), UsageError);

  CallbackOracle bad(box, [](const Point&) { return Point{99}; });
  OracleSession sb(bad);
  CHECK_THROWS_AS(sb.query({1}), ContractViolation);
}

TEST_CASE("verify_monotone_on_log") {
  BoxLattice box(Point{0, 0}, Point{3, 3});
  IdentityOracle id(box);
  CHECK(exhaustive_violations(id, OrderRelation::Componentwise).empty());

  QueryLog log;
  log.entries = {{Point{0, 0}, Point{1, 1}}, {Point{1, 1}, Point{0, 0}}};
  CHECK(verify_monotone_on_log(log, OrderRelation::Componentwise).size() == 1);

  QueryLog incomparable_only;
  incomparable_only.entries = {{Point{0, 1}, Point{3, 3}}, {Point{1, 0}, Point{0, 0}}};
  CHECK(verify_monotone_on_log(incomparable_only, OrderRelation::Componentwise).empty());
}

TEST_CASE("structured oracle: degenerate weights give a constant") {
  BoxLattice box(Point{0, 0}, Point{9, 9});
  std::vector<std::vector<Coord>> w(2, std::vector<Coord>(2, 0));
  std::vector<std::vector<StepFunction>> s(2, std::vector<StepFunction>(2));
  StructuredOracle oracle(box, {4, 7}, w, s);
  OracleSession session(oracle);
  CHECK(session.query({0, 0}) == Point{4, 7});
  CHECK(session.query({9, 9}) == Point{4, 7});
  CHECK(session.query({3, 8}) == Point{4, 7});
}

TEST_CASE("structured oracle: identity pattern recovers the clamped identity") {
  BoxLattice box(Point{0, 0}, Point{9, 9});
  std::vector<std::vector<Coord>> w(2, std::vector<Coord>(2, 0));
  w[0][0] = w[1][1] = 1;
  std::vector<std::vector<StepFunction>> s(2, std::vector<StepFunction>(2));
  s[0][0] = StepFunction::identity_on(0, 9);
  s[1][1] = StepFunction::identity_on(0, 9);
  StructuredOracle oracle(box, {0, 0}, w, s);
  for (BoxIterator it(box); it.valid(); ++it) {
    CHECK(oracle.raw_eval(*it) == *it);
  }
}

TEST_CASE("gen_structured_monotone seed 42 is exhaustively monotone on 32x32") {
  BoxLattice box(Point{0, 0}, Point{31, 31});
  auto oracle = gen_structured_monotone(42, box);
  CHECK(exhaustive_violations(*oracle, OrderRelation::Componentwise).empty());
}

TEST_CASE("gen_closure_monotone seed 7 is exhaustively monotone on 8x8") {
  BoxLattice box(Point{0, 0}, Point{7, 7});
  auto oracle = gen_closure_monotone(7, box);
  CHECK(exhaustive_violations(*oracle, OrderRelation::Componentwise).empty());
}

TEST_CASE("closure fixes monotone maps and singletons") {
  BoxLattice box(Point{0, 0}, Point{3, 3});
  std::vector<Point> raw;
  for (BoxIterator it(box); it.valid(); ++it) raw.push_back(*it);  // identity, monotone
  auto oracle = closure_of_raw_map(box, raw);
  for (BoxIterator it(box); it.valid(); ++it) CHECK(oracle->raw_eval(*it) == *it);

  BoxLattice one(Point{5}, Point{5});
  auto single = closure_of_raw_map(one, {Point{5}});
  CHECK(single->raw_eval({5}) == Point{5});
}

TEST_CASE("brute_force_fixed_points examples") {
  BoxLattice box(Point{0, 0}, Point{2, 2});
  IdentityOracle id(box);
  CHECK(brute_force_fixed_points(id, box).size() == box.size());

  ConstantOracle c(box, Point{1, 2});
  auto fixed = brute_force_fixed_points(c, box);
  REQUIRE(fixed.size() == 1);
  CHECK(fixed[0] == Point{1, 2});

  BoxLattice line(Point{0}, Point{9});
  CallbackOracle down(line, [](const Point& x) {
    return Point{x[0] > 0 ? x[0] - 1 : 0};
  });
  auto only_bottom = brute_force_fixed_points(down, line);
  REQUIRE(only_bottom.size() == 1);
  CHECK(only_bottom[0] == Point{0});
}

TEST_CASE("generator soundness and Tarski existence across seeds") {
  std::vector<BoxLattice> boxes = {
      BoxLattice(Point{0, 0}, Point{20, 11}),
      BoxLattice(Point{-5, 3}, Point{9, 17}),
      BoxLattice(Point{0, 0, 0}, Point{7, 5, 3}),
  };
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    for (const auto& box : boxes) {
      auto structured = gen_structured_monotone(seed, box);
      CHECK(exhaustive_violations(*structured, OrderRelation::Componentwise).empty());
      CHECK_FALSE(brute_force_fixed_points(*structured, box).empty());

      auto closure = gen_closure_monotone(seed, box);
      CHECK(exhaustive_violations(*closure, OrderRelation::Componentwise).empty());
      CHECK_FALSE(brute_force_fixed_points(*closure, box).empty());
    }
  }
}

TEST_CASE("memo consistency across arbitrary query sequences with repeats") {
  BoxLattice box(Point{0, 0}, Point{12, 12});
  std::mt19937_64 rng(314);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto oracle = gen_structured_monotone(seed, box);
    OracleSession s(*oracle);
    std::unordered_map<Point, Point, PointHash> seen;
    for (int q = 0; q < 400; ++q) {
      Point x = box.unrank(rng() % 64);  // small pool forces many repeats
      const Point& fx = s.query(x);
      auto [it, fresh] = seen.emplace(x, fx);
      if (!fresh) CHECK(it->second == fx);
    }
    CHECK(s.distinct_queries() == seen.size());
    CHECK(s.log().count() == seen.size());
  }
}

TEST_CASE("capacity gates") {
  BoxLattice big(Point{0, 0}, Point{1023, 1023});  // 2^20 points
  CHECK_THROWS_AS(gen_closure_monotone(1, big), CapacityError);
  BoxLattice huge(Point{0, 0}, Point{2047, 1023});
  IdentityOracle id(huge);
  CHECK_THROWS_AS(brute_force_fixed_points(id, huge), CapacityError);
}

TEST_CASE("gen_lex_monotone produces lex-monotone instances") {
  BoxLattice box(Point{0, 0}, Point{15, 15});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto oracle = gen_lex_monotone(seed, box);
    CHECK(exhaustive_violations(*oracle, OrderRelation::Lexicographic).empty());
  }
}

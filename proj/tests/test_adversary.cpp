#include <doctest.h>

#include "tarski/adversary.hpp"
#include "tarski/generators.hpp"
#include "tarski/uniqueness.hpp"

using namespace tarski;

TEST_CASE("max_positive_index") {
  CHECK(max_positive_index({2, 0, 3}) == 2);  // third coordinate
  CHECK(max_positive_index({1, 0, 0}) == 0);
  CHECK(max_positive_index({0, 5, 0}) == 1);
  CHECK_THROWS_AS(max_positive_index({0, 0, 0}), UsageError);
  CHECK_THROWS_AS(max_positive_index({-1, 2}), UsageError);
}

TEST_CASE("adversary answers never change across repeated asks") {
  LineAdversary line(16);
  CHECK(line.raw_eval({5}) == Point{4});
  CHECK(line.raw_eval({5}) == Point{4});
  CHECK(line.raw_eval({0}) == Point{0});

  AuxAdversary aux({3, 3});
  CHECK(aux.raw_eval({2, 1}) == Point{2, 0});
  CHECK(aux.raw_eval({2, 1}) == Point{2, 0});
  CHECK(aux.raw_eval({2, 0}) == Point{1, 0});
  CHECK(aux.raw_eval({0, 0}) == Point{0, 0});
}

TEST_CASE("the adversary functions are order preserving in full") {
  LineAdversary line(50);
  OracleSession s(line);
  for (BoxIterator it(line.box()); it.valid(); ++it) s.query(*it);
  CHECK(verify_monotone_on_log(s.log(), OrderRelation::Componentwise).empty());

  AuxAdversary aux({4, 4, 3});
  OracleSession sa(aux);
  for (BoxIterator it(aux.box()); it.valid(); ++it) sa.query(*it);
  CHECK(verify_monotone_on_log(sa.log(), OrderRelation::Componentwise).empty());
}

TEST_CASE("line_can_hide_second") {
  LineAdversary fresh(10);
  auto spot = line_can_hide_second(fresh);
  REQUIRE(spot.has_value());
  CHECK((*spot)[0] >= 1);

  LineAdversary partial(10);
  for (Coord x = 1; x <= 8; ++x) partial.raw_eval({x});
  auto last = line_can_hide_second(partial);
  REQUIRE(last.has_value());
  CHECK(*last == Point{9});

  LineAdversary drained(10);
  for (Coord x = 1; x <= 9; ++x) drained.raw_eval({x});
  CHECK_FALSE(line_can_hide_second(drained).has_value());
}

TEST_CASE("aux_can_hide_second") {
  AuxAdversary fresh({3, 3});
  auto spot = aux_can_hide_second(fresh);
  REQUIRE(spot.has_value());
  CHECK(*spot != Point{0, 0});

  AuxAdversary drained({3, 3});
  for (BoxIterator it(drained.box()); it.valid(); ++it) {
    if (*it != Point{0, 0}) drained.raw_eval(*it);
  }
  CHECK_FALSE(aux_can_hide_second(drained).has_value());
}

TEST_CASE("aux hiding follows the uncovered (maxindex, value) pair") {
  // Ask everything except the points with maxindex = 2 and that coordinate
  // equal to 3; the certifier must find its hiding spot there.
  AuxAdversary adv({4, 4});
  for (BoxIterator it(adv.box()); it.valid(); ++it) {
    const Point& p = *it;
    if (p == Point{0, 0}) continue;
    if (max_positive_index(p) == 1 && p[1] == 3) continue;
    adv.raw_eval(p);
  }
  auto spot = aux_can_hide_second(adv);
  REQUIRE(spot.has_value());
  CHECK(max_positive_index(*spot) == 1);
  CHECK((*spot)[1] == 3);
}

TEST_CASE("uniqueness against the line adversary hits the Omega(|L|) wall") {
  const Coord n = 100;
  LineAdversary adv(n);
  // with only a few queries made, a second fixed point is always hideable
  for (Coord x = 10; x < 60; ++x) adv.raw_eval({x});
  CHECK(line_can_hide_second(adv).has_value());

  auto report = is_unique_fixed_point(adv, adv.box(), Point{0});
  CHECK(report.unique);
  CHECK(adv.queried().size() >= static_cast<std::size_t>(n - 1));
  CHECK_FALSE(line_can_hide_second(adv).has_value());
}

TEST_CASE("exactly N-1 distinct queries are needed before hiding is impossible") {
  const Coord n = 40;
  LineAdversary adv(n);
  // any proper subset of {1..N-1} leaves a hideable point
  for (Coord x = 1; x < n - 1; ++x) {
    adv.raw_eval({x});
    CHECK(line_can_hide_second(adv).has_value());
  }
  adv.raw_eval({n - 1});
  CHECK_FALSE(line_can_hide_second(adv).has_value());
}

TEST_CASE("uniqueness query count grows linearly against the aux adversary") {
  std::vector<std::size_t> counts;
  for (Coord n : {4, 8, 16}) {
    AuxAdversary adv({n, n});
    auto report = is_unique_fixed_point(adv, adv.box(), Point{0, 0});
    CHECK(report.unique);
    // descent walks one coordinate step at a time: the known-point check,
    // 2n fresh descent queries, and the one-step ascent
    CHECK(report.queries == static_cast<std::size_t>(2 * n + 2));
    counts.push_back(report.queries);
  }
  CHECK(counts[1] - counts[0] == 8);
  CHECK(counts[2] - counts[1] == 16);
}

TEST_CASE("capacity gate on the completion check") {
  AuxAdversary big({511, 511});  // 512*512 = 2^18 points
  CHECK_THROWS_AS(aux_can_hide_second(big), CapacityError);
}

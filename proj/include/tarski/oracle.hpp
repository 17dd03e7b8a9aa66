#pragma once

#include <functional>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tarski/box.hpp"
#include "tarski/errors.hpp"
#include "tarski/point.hpp"

namespace tarski {

/// Black-box access to a map f : L -> L over a declared box. raw_eval is
/// called at most once per distinct point when driven through an
/// OracleSession; implementations may keep private state (adversaries record
/// what was asked).
class MonotoneOracle {
 public:
  explicit MonotoneOracle(BoxLattice box) : box_(std::move(box)) {}
  virtual ~MonotoneOracle() = default;

  const BoxLattice& box() const { return box_; }

  virtual Point raw_eval(const Point& x) = 0;

 protected:
  BoxLattice box_;
};

/// Chronological record of distinct queries. Memo hits never append, so
/// entries.size() is exactly the number of oracle calls made.
struct QueryLog {
  std::vector<std::pair<Point, Point>> entries;

  std::size_t count() const { return entries.size(); }
};

/// One sequential query session: memoization plus the query log. All solvers
/// go through a session so their reported counts are distinct oracle calls.
class OracleSession {
 public:
  explicit OracleSession(MonotoneOracle& oracle) : oracle_(oracle) {}

  const BoxLattice& box() const { return oracle_.box(); }
  MonotoneOracle& oracle() { return oracle_; }
  const QueryLog& log() const { return log_; }
  std::size_t distinct_queries() const { return log_.entries.size(); }

  /// Memoized evaluation. Out-of-box queries are usage errors; out-of-box
  /// answers are contract violations by the oracle.
  const Point& query(const Point& x) {
    if (!box().contains(x)) {
      throw UsageError("query: point " + to_string(x) + " outside oracle box " +
                       to_string(box()));
    }
    auto it = memo_.find(x);
    if (it != memo_.end()) return it->second;
    Point y = oracle_.raw_eval(x);
    if (!box().contains(y)) {
      throw ContractViolation(
          "oracle answered f(" + to_string(x) + ") = " + to_string(y) +
              ", outside its declared box " + to_string(box()),
          {{x, y}});
    }
    auto [pos, inserted] = memo_.emplace(x, std::move(y));
    log_.entries.emplace_back(pos->first, pos->second);
    return pos->second;
  }

 private:
  MonotoneOracle& oracle_;
  QueryLog log_;
  std::unordered_map<Point, Point, PointHash> memo_;
};

struct MonotoneViolation {
  Point x, fx, y, fy;
};

/// All pairs (x, y) in the log with x <= y but f(x) !<= f(y) under the given
/// ordering. Empty result certifies the observed slice is order preserving.
std::vector<MonotoneViolation> verify_monotone_on_log(const QueryLog& log,
                                                      OrderRelation order);

// ---- basic oracles ----

class IdentityOracle final : public MonotoneOracle {
 public:
  using MonotoneOracle::MonotoneOracle;
  Point raw_eval(const Point& x) override { return x; }
};

class ConstantOracle final : public MonotoneOracle {
 public:
  ConstantOracle(BoxLattice box, Point value) : MonotoneOracle(std::move(box)), value_(std::move(value)) {
    if (!this->box().contains(value_)) {
      throw UsageError("ConstantOracle: value " + to_string(value_) + " outside box");
    }
  }
  Point raw_eval(const Point&) override { return value_; }

 private:
  Point value_;
};

/// Arbitrary function as an oracle; used for fixtures and compositions.
class CallbackOracle final : public MonotoneOracle {
 public:
  CallbackOracle(BoxLattice box, std::function<Point(const Point&)> fn)
      : MonotoneOracle(std::move(box)), fn_(std::move(fn)) {}
  Point raw_eval(const Point& x) override { return fn_(x); }

 private:
  std::function<Point(const Point&)> fn_;
};

/// View of another oracle restricted to a sub-box, with answers clamped into
/// it. Clamping preserves monotonicity.
class ClampViewOracle final : public MonotoneOracle {
 public:
  ClampViewOracle(MonotoneOracle& inner, BoxLattice sub)
      : MonotoneOracle(std::move(sub)), inner_(inner) {
    for (std::size_t i = 0; i < box_.dim(); ++i) {
      if (box_.lower()[i] < inner.box().lower()[i] || box_.upper()[i] > inner.box().upper()[i]) {
        throw UsageError("ClampViewOracle: sub-box not contained in inner box");
      }
    }
  }

  Point raw_eval(const Point& x) override {
    Point y = inner_.raw_eval(x);
    return join(meet(y, box_.upper()), box_.lower());
  }

 private:
  MonotoneOracle& inner_;
};

/// Planted nonmonotone fixture: reflects the box, f(x) = lower + upper - x.
/// Every solver must surface this as a contract violation, never an answer.
class AntitoneFixtureOracle final : public MonotoneOracle {
 public:
  using MonotoneOracle::MonotoneOracle;
  Point raw_eval(const Point& x) override {
    std::vector<Coord> c(box_.dim());
    for (std::size_t i = 0; i < box_.dim(); ++i) {
      c[i] = box_.lower()[i] + (box_.upper()[i] - x[i]);
    }
    return Point(std::move(c));
  }
};

}  // namespace tarski

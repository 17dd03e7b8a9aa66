#include "tarski/polytope.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tarski/oracle.hpp"
#include "tarski/uniqueness.hpp"

namespace tarski {

namespace {

constexpr std::size_t kPolytopeMaxVars = 12;
constexpr std::size_t kPolytopeMaxRows = 40;
constexpr Size128 kIntegerSearchMaxPoints = Size128(1) << 20;

Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw UsageError(
      "polytope JSON entries must be integers or \"p/q\" strings; floating point "
      "would corrupt exact arithmetic");
}

}  // namespace

Polytope::Polytope(std::vector<RatVec> a, RatVec b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw PolytopeError("polytope needs at least one row");
  n_ = a_[0].size();
  if (n_ == 0) throw PolytopeError("polytope needs at least one variable");
  if (n_ > kPolytopeMaxVars || a_.size() > kPolytopeMaxRows) {
    throw CapacityError("polytope gated to " + std::to_string(kPolytopeMaxVars) +
                        " variables and " + std::to_string(kPolytopeMaxRows) + " rows");
  }
  if (b_.size() != a_.size()) {
    throw PolytopeError("polytope: A has " + std::to_string(a_.size()) + " rows but b has " +
                        std::to_string(b_.size()) + " entries");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i].size() != n_) throw PolytopeError("polytope: ragged matrix");
    int positives = 0;
    for (const Rational& c : a_[i]) {
      if (c > 0) ++positives;
    }
    if (positives > 1) {
      throw PolytopeError("polytope row " + std::to_string(i + 1) +
                          " has more than one positive entry");
    }
  }
}

bool Polytope::contains(const RatVec& x) const {
  if (x.size() != n_) throw UsageError("Polytope::contains: arity mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    Rational lhs(0);
    for (std::size_t j = 0; j < n_; ++j) lhs += a_[i][j] * x[j];
    if (lhs > b_[i]) return false;
  }
  return true;
}

std::vector<LinearConstraint> Polytope::rows() const {
  std::vector<LinearConstraint> cons;
  cons.reserve(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) cons.push_back({a_[i], b_[i]});
  return cons;
}

Polytope Polytope::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("polytope JSON: ") + e.what());
  }
  if (!j.contains("A") || !j.contains("b")) {
    throw UsageError("polytope JSON must have fields \"A\" and \"b\"");
  }
  std::vector<RatVec> a;
  for (const auto& row : j.at("A")) {
    RatVec r;
    for (const auto& v : row) r.push_back(json_rational(v));
    a.push_back(std::move(r));
  }
  RatVec b;
  for (const auto& v : j.at("b")) b.push_back(json_rational(v));
  return Polytope(std::move(a), std::move(b));
}

Polytope Polytope::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open polytope file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string Polytope::to_json_text() const {
  nlohmann::json j;
  for (const auto& row : a_) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(rat_to_string(v));
    j["A"].push_back(r);
  }
  for (const auto& v : b_) j["b"].push_back(rat_to_string(v));
  return j.dump(2);
}

namespace {

RatVec unit_objective(std::size_t n, std::size_t j) {
  RatVec c(n, Rational(0));
  c[j] = 1;
  return c;
}

Rational coordinate_optimum(const Polytope& P, std::size_t j, LpSense sense) {
  LpResult r = solve_lp_exact(sense, unit_objective(P.num_vars(), j), P.rows());
  if (r.status == LpStatus::Infeasible) throw PolytopeError("polytope is empty");
  if (r.status == LpStatus::Unbounded) {
    throw PolytopeError("polytope is unbounded in coordinate " + std::to_string(j + 1));
  }
  return r.value;
}

}  // namespace

LatticeHull build_hull(const Polytope& P, OrderRelation variant) {
  const std::size_t n = P.num_vars();
  LatticeHull hull;
  hull.variant = variant;

  if (variant == OrderRelation::Componentwise) {
    LpResult top = solve_lp_exact(LpSense::Maximize, RatVec(n, Rational(1)), P.rows());
    if (top.status == LpStatus::Infeasible) throw PolytopeError("polytope is empty");
    if (top.status == LpStatus::Unbounded) throw PolytopeError("polytope is unbounded");
    hull.x_max = top.point;  // dominates every point of P by the row structure
    hull.x_min.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      hull.x_min[j] = coordinate_optimum(P, j, LpSense::Minimize);
    }
    std::vector<Coord> xu(n), xl(n);
    for (std::size_t j = 0; j < n; ++j) {
      xu[j] = to_coord(floor_rat(hull.x_max[j]));
      // greatest integer strictly below x_min: the bottom of the map must
      // never itself be an integer point of P
      BigInt lo = floor_rat(hull.x_min[j]);
      if (Rational(lo) == hull.x_min[j]) lo -= 1;
      xl[j] = to_coord(lo);
    }
    hull.x_u = Point(xu);
    hull.x_l = Point(xl);
    bool nonempty = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (xl[j] > xu[j]) nonempty = false;
    }
    if (nonempty) hull.box = BoxLattice(hull.x_l, hull.x_u);
    return hull;
  }

  hull.x_max.resize(n);
  hull.x_min.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    hull.x_max[j] = coordinate_optimum(P, j, LpSense::Maximize);
    hull.x_min[j] = coordinate_optimum(P, j, LpSense::Minimize);
  }
  std::vector<Coord> xu(n), xl(n);
  for (std::size_t j = 0; j < n; ++j) {
    xu[j] = to_coord(floor_rat(hull.x_max[j]));
    xl[j] = to_coord(floor_rat(hull.x_min[j]));
  }
  hull.x_u = Point(xu);
  hull.x_l = Point(xl);
  hull.box = BoxLattice(hull.x_l, hull.x_u);
  return hull;
}

RatVec d_map(const Polytope& P, const LatticeHull& hull, const RatVec& x) {
  if (hull.variant != OrderRelation::Componentwise) {
    throw UsageError("d_map needs the componentwise hull");
  }
  if (x.size() != P.num_vars()) throw UsageError("d_map: arity mismatch");
  std::vector<LinearConstraint> cons = P.rows();
  for (std::size_t j = 0; j < P.num_vars(); ++j) {
    cons.push_back({unit_objective(P.num_vars(), j), x[j]});
  }
  LpResult r = solve_lp_exact(LpSense::Maximize, RatVec(P.num_vars(), Rational(1)), cons);
  if (r.status == LpStatus::Infeasible) return rat_vec(hull.x_l);
  if (r.status == LpStatus::Unbounded) {
    throw PolytopeError("d_map: unbounded LP; the polytope data is invalid");
  }
  return r.point;
}

Point h_componentwise(const Polytope& P, const LatticeHull& hull, const RatVec& x) {
  RatVec d = d_map(P, hull, x);
  std::vector<Coord> out(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) out[j] = to_coord(floor_rat(d[j]));
  return Point(std::move(out));
}

Point h_componentwise(const Polytope& P, const LatticeHull& hull, const Point& x) {
  return h_componentwise(P, hull, rat_vec(x));
}

LexFixedPointMap::LexFixedPointMap(const Polytope& P, const LatticeHull& hull,
                                   LexMapOptions options)
    : P_(P), hull_(hull), options_(options) {
  if (hull_.variant != OrderRelation::Lexicographic) {
    throw UsageError("LexFixedPointMap needs the lexicographic hull");
  }
  if (P_.num_vars() < 2) {
    throw UsageError("the lexicographic map is defined for n >= 2");
  }
}

/// Bounds of coordinate k (1-based) over P(y, k-1) = {x in P | x_i = y_i,
/// i < k}. One product LP min x_k - v_k gives both ends at once; the split
/// route solves min x_k and max x_k separately for cross-checking.
std::pair<Rational, Rational> LexFixedPointMap::prefix_bounds(const Point& y,
                                                              std::size_t k) {
  std::vector<Coord> key(y.coords().begin(), y.coords().begin() + (k - 1));
  auto cached = cache_.find(key);
  if (cached != cache_.end()) return cached->second;

  const std::size_t n = P_.num_vars();
  const std::size_t width = options_.split_lp ? n : 2 * n;
  auto pin = [&](std::vector<LinearConstraint>& cons, std::size_t offset) {
    for (std::size_t i = 0; i + 1 < k; ++i) {
      RatVec row(width, Rational(0));
      row[offset + i] = 1;
      cons.push_back({row, Rational(y[i])});
      row[offset + i] = -1;
      cons.push_back({std::move(row), Rational(-y[i])});
    }
  };

  std::pair<Rational, Rational> bounds;
  if (options_.split_lp) {
    std::vector<LinearConstraint> cons = P_.rows();
    pin(cons, 0);
    LpResult lo = solve_lp_exact(LpSense::Minimize, unit_objective(n, k - 1), cons);
    LpResult hi = solve_lp_exact(LpSense::Maximize, unit_objective(n, k - 1), cons);
    if (lo.status != LpStatus::Optimal || hi.status != LpStatus::Optimal) {
      throw PolytopeError("lexicographic map: prefix slice is empty or unbounded");
    }
    bounds = {lo.value, hi.value};
  } else {
    std::vector<LinearConstraint> cons;
    for (const auto& con : P_.rows()) {
      RatVec row(2 * n, Rational(0));
      for (std::size_t j = 0; j < n; ++j) row[j] = con.coeffs[j];
      cons.push_back({std::move(row), con.rhs});
      RatVec row2(2 * n, Rational(0));
      for (std::size_t j = 0; j < n; ++j) row2[n + j] = con.coeffs[j];
      cons.push_back({std::move(row2), con.rhs});
    }
    pin(cons, 0);
    pin(cons, n);
    RatVec objective(2 * n, Rational(0));
    objective[k - 1] = 1;
    objective[n + k - 1] = -1;
    LpResult r = solve_lp_exact(LpSense::Minimize, objective, cons);
    if (r.status != LpStatus::Optimal) {
      throw PolytopeError("lexicographic map: prefix slice is empty or unbounded");
    }
    bounds = {r.point[k - 1], r.point[n + k - 1]};
  }
  cache_.emplace(std::move(key), bounds);
  return bounds;
}

Point LexFixedPointMap::apply(const Point& y) {
  const std::size_t n = P_.num_vars();
  if (!hull_.box || !hull_.box->contains(y)) {
    throw UsageError("lexicographic map: point " + to_string(y) + " outside D(P)");
  }
  if (y[0] == hull_.x_l[0]) return hull_.x_l;
  if (P_.contains(y)) return y;

  for (std::size_t k = 2; k <= n; ++k) {
    auto [dmin, dmax] = prefix_bounds(y, k);
    Coord ceil_min = to_coord(ceil_rat(dmin));
    Coord floor_max = to_coord(floor_rat(dmax));
    bool to_step4 = y[k - 1] < ceil_min || floor_max < ceil_min;
    if (to_step4) {
      std::vector<Coord> h(n);
      if (y[k - 2] <= hull_.x_l[k - 2] + 1) {
        for (std::size_t i = 1; i <= n; ++i) {
          h[i - 1] = i <= k - 2 ? y[i - 1] : hull_.x_l[i - 1];
        }
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          if (i <= k - 2) {
            h[i - 1] = y[i - 1];
          } else if (i == k - 1) {
            h[i - 1] = y[k - 2] - 1;
          } else {
            h[i - 1] = hull_.x_u[i - 1];
          }
        }
      }
      return Point(std::move(h));
    }
    if (y[k - 1] > floor_max) {
      std::vector<Coord> h(n);
      for (std::size_t i = 1; i <= n; ++i) {
        if (i <= k - 1) {
          h[i - 1] = y[i - 1];
        } else if (i == k) {
          h[i - 1] = floor_max;
        } else {
          h[i - 1] = hull_.x_u[i - 1];
        }
      }
      return Point(std::move(h));
    }
  }
  // Every coordinate sat inside its slice bounds, which puts y in P; but
  // membership already short-circuited above.
  throw PolytopeError("lexicographic map: scan passed the last coordinate for " +
                      to_string(y) + "; polytope data is inconsistent");
}

Point h_lexicographic(const Polytope& P, const LatticeHull& hull, const Point& y,
                      LexMapOptions options) {
  LexFixedPointMap map(P, hull, options);
  return map.apply(y);
}

std::optional<Point> integer_point_via_fixed_point(const Polytope& P) {
  LatticeHull hull = build_hull(P, OrderRelation::Componentwise);
  if (!hull.box) return std::nullopt;  // no coordinate range holds an integer
  if (hull.box->size() > kIntegerSearchMaxPoints) {
    throw CapacityError("integer_point_via_fixed_point: D(P) has " +
                        to_string(hull.box->size()) + " points, gate is " +
                        to_string(kIntegerSearchMaxPoints));
  }
  CallbackOracle oracle(*hull.box,
                        [&](const Point& x) { return h_componentwise(P, hull, x); });
  OracleSession session(oracle);
  FixedPointResult top = greatest_fixed_point(session, *hull.box);
  if (top.point == hull.x_l) return std::nullopt;
  if (!P.contains(top.point)) {
    throw std::logic_error("integer_point_via_fixed_point: non-bottom fixed point " +
                           to_string(top.point) + " is not in P");
  }
  return top.point;
}

}  // namespace tarski

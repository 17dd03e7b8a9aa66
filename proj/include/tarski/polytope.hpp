#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tarski/box.hpp"
#include "tarski/lp.hpp"
#include "tarski/rational.hpp"

namespace tarski {

/// Invalid polytope data: empty, unbounded, or breaking the row-structure
/// precondition. A usage error, not an oracle-contract violation.
class PolytopeError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// P = {x in R^n | Ax <= b} with each row of A carrying at most one positive
/// entry. Construction validates the row structure; boundedness and
/// nonemptiness are checked when the lattice hull is built.
class Polytope {
 public:
  Polytope(std::vector<RatVec> a, RatVec b);

  std::size_t num_vars() const { return n_; }
  std::size_t num_rows() const { return a_.size(); }
  const std::vector<RatVec>& A() const { return a_; }
  const RatVec& b() const { return b_; }

  bool contains(const RatVec& x) const;
  bool contains(const Point& x) const { return contains(rat_vec(x)); }

  /// Rows of P as LP constraints, optionally with upper-bound pins
  /// x_i <= cap_i / x_i >= cap_i for a prefix (written as row pairs).
  std::vector<LinearConstraint> rows() const;

  static Polytope from_json_text(const std::string& text);
  static Polytope from_json_file(const std::string& path);
  std::string to_json_text() const;

 private:
  std::vector<RatVec> a_;
  RatVec b_;
  std::size_t n_;
};

/// Integer bounding data for P under one of the two orderings.
/// Componentwise: x_max is the unique e^T-maximizer of P (its coordinates
/// dominate all of P), x_min the per-coordinate minima; x_u = floor(x_max);
/// x_l = ceil(x_min) then decremented wherever it landed exactly on x_min, so
/// x_l <_c x_min holds strictly.
/// Lexicographic: per-coordinate maxima/minima, x_u = floor(x_max),
/// x_l = floor(x_min), no adjustment.
struct LatticeHull {
  OrderRelation variant = OrderRelation::Componentwise;
  RatVec x_max;
  RatVec x_min;
  Point x_u;
  Point x_l;
  /// D(P) as an integer box; empty when some coordinate range holds no
  /// integer (componentwise variant only), in which case P has no integer
  /// point either.
  std::optional<BoxLattice> box;
};

LatticeHull build_hull(const Polytope& P, OrderRelation variant);

/// d(x): x^l when P(x) = {y in P | y <=_c x} is empty, else the unique
/// e^T-maximizer over P(x).
RatVec d_map(const Polytope& P, const LatticeHull& hull, const RatVec& x);

/// h(x) = floor(d(x)). Fixed points other than x^l are exactly the integer
/// points of P.
Point h_componentwise(const Polytope& P, const LatticeHull& hull, const RatVec& x);
Point h_componentwise(const Polytope& P, const LatticeHull& hull, const Point& x);

struct LexMapOptions {
  /// Compute d_k^min / d_k^max from two separate LPs instead of the single
  /// product LP; the optima coincide, kept for cross-checking.
  bool split_lp = false;
};

/// The lexicographic self-map of D(P): membership short-circuits, otherwise
/// the first coordinate k whose value leaves [ceil d_k^min, floor d_k^max]
/// decides the output. Order preserving under <=_l; its fixed points other
/// than x^l are the integer points of P. Caches the per-prefix LP bounds, so
/// sweeping a box costs one LP per distinct prefix.
class LexFixedPointMap {
 public:
  LexFixedPointMap(const Polytope& P, const LatticeHull& hull, LexMapOptions options = {});

  Point apply(const Point& y);

 private:
  std::pair<Rational, Rational> prefix_bounds(const Point& y, std::size_t k);

  const Polytope& P_;
  const LatticeHull& hull_;
  LexMapOptions options_;
  std::map<std::vector<Coord>, std::pair<Rational, Rational>> cache_;
};

Point h_lexicographic(const Polytope& P, const LatticeHull& hull, const Point& y,
                      LexMapOptions options = {});

/// Runs the greatest-fixed-point descent of h_componentwise over D(P); a
/// result other than x^l is an integer point of P, and none means P holds no
/// integer point.
std::optional<Point> integer_point_via_fixed_point(const Polytope& P);

}  // namespace tarski

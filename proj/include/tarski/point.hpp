#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tarski {

using Coord = std::int64_t;

/// A point of Z^d. Carries no ordering of its own; comparisons go through
/// compare() with an explicit OrderRelation so componentwise and
/// lexicographic semantics are never mixed up silently.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Coord> coords) : c_(std::move(coords)) {}
  Point(std::initializer_list<Coord> coords) : c_(coords) {}

  static Point filled(std::size_t dim, Coord value) {
    return Point(std::vector<Coord>(dim, value));
  }

  std::size_t dim() const { return c_.size(); }
  Coord operator[](std::size_t i) const { return c_[i]; }
  Coord& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Coord>& coords() const { return c_; }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  friend bool operator==(const Point& a, const Point& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Point& a, const Point& b) { return a.c_ != b.c_; }

 private:
  std::vector<Coord> c_;
};

enum class OrderRelation { Componentwise, Lexicographic };

enum class Cmp { Less, Equal, Greater, Incomparable };

/// Floor of (a+b)/2; plain C++ division truncates toward zero, which is
/// wrong for negative midpoints.
inline Coord floor_div2(Coord a, Coord b) {
  __int128 s = static_cast<__int128>(a) + b;
  __int128 q = s / 2;
  if (s % 2 != 0 && s < 0) --q;
  return static_cast<Coord>(q);
}

// Throws std::invalid_argument, the base of UsageError, so point.hpp has no
// dependency on errors.hpp.
inline void require_same_dim(const Point& x, const Point& y, const char* op) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(x.dim()) + " vs " +
                                std::to_string(y.dim()) + ")");
  }
}

inline Cmp compare(OrderRelation order, const Point& x, const Point& y) {
  require_same_dim(x, y, "compare");
  if (order == OrderRelation::Lexicographic) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
      if (x[i] < y[i]) return Cmp::Less;
      if (x[i] > y[i]) return Cmp::Greater;
    }
    return Cmp::Equal;
  }
  bool le = true, ge = true;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i] > y[i]) le = false;
    if (x[i] < y[i]) ge = false;
  }
  if (le && ge) return Cmp::Equal;
  if (le) return Cmp::Less;
  if (ge) return Cmp::Greater;
  return Cmp::Incomparable;
}

/// x <= y in the given order (Less or Equal).
inline bool leq(OrderRelation order, const Point& x, const Point& y) {
  Cmp c = compare(order, x, y);
  return c == Cmp::Less || c == Cmp::Equal;
}

inline Point meet(const Point& x, const Point& y) {
  require_same_dim(x, y, "meet");
  std::vector<Coord> m(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) m[i] = x[i] < y[i] ? x[i] : y[i];
  return Point(std::move(m));
}

inline Point join(const Point& x, const Point& y) {
  require_same_dim(x, y, "join");
  std::vector<Coord> m(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) m[i] = x[i] > y[i] ? x[i] : y[i];
  return Point(std::move(m));
}

inline std::pair<Point, Point> meet_join(const Point& x, const Point& y) {
  return {meet(x, y), join(x, y)};
}

inline std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) os << ", ";
    os << p[i];
  }
  os << ')';
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << to_string(p);
}

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::uint64_t h = 1469598103934665603ull;
    for (Coord c : p) {
      h ^= static_cast<std::uint64_t>(c);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace tarski

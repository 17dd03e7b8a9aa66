#pragma once

#include <string>
#include <vector>

#include "tarski/errors.hpp"
#include "tarski/point.hpp"

namespace tarski {

using Size128 = unsigned __int128;

std::string to_string(Size128 v);

/// The integer box {x in Z^d | lower <=_c x <=_c upper}. Degenerate sides
/// (lower_i == upper_i) are legal; solvers use single-point boxes as base
/// cases. The total point count must fit in 128 bits or construction fails.
class BoxLattice {
 public:
  BoxLattice(Point lower, Point upper) : lo_(std::move(lower)), up_(std::move(upper)) {
    require_same_dim(lo_, up_, "BoxLattice");
    if (lo_.dim() == 0) throw UsageError("BoxLattice: dimension must be >= 1");
    strides_.assign(dim(), 1);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (lo_[i] > up_[i]) {
        throw UsageError("BoxLattice: lower " + tarski::to_string(lo_) +
                         " exceeds upper " + tarski::to_string(up_) +
                         " in coordinate " + std::to_string(i + 1));
      }
    }
    size_ = 1;
    for (std::size_t i = dim(); i-- > 0;) {
      strides_[i] = size_;
      Size128 side = side_count(i);
      Size128 next;
      if (__builtin_mul_overflow(size_, side, &next)) {
        throw UsageError("BoxLattice: point count overflows 128 bits");
      }
      size_ = next;
    }
  }

  std::size_t dim() const { return lo_.dim(); }
  const Point& lower() const { return lo_; }
  const Point& upper() const { return up_; }

  /// N_i = upper_i - lower_i + 1.
  Size128 side_count(std::size_t i) const {
    __int128 d = static_cast<__int128>(up_[i]) - lo_[i];
    return static_cast<Size128>(d) + 1;
  }

  /// Total number of lattice points.
  Size128 size() const { return size_; }

  bool contains(const Point& x) const {
    if (x.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] < lo_[i] || x[i] > up_[i]) return false;
    }
    return true;
  }

  bool is_singleton() const { return lo_ == up_; }

  /// Componentwise floor((lower+upper)/2).
  Point center() const {
    std::vector<Coord> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = floor_div2(lo_[i], up_[i]);
    return Point(std::move(c));
  }

  /// Mixed-radix position of x, coordinate 1 most significant:
  /// rank(x) = sum_i (x_i - lower_i) * prod_{j>i} N_j. Order-isomorphic to
  /// the lexicographic ordering of the box.
  Size128 rank(const Point& x) const {
    require_inside(x, "rank");
    Size128 r = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      Size128 off = static_cast<Size128>(static_cast<__int128>(x[i]) - lo_[i]);
      r += off * strides_[i];
    }
    return r;
  }

  Point unrank(Size128 r) const {
    if (r >= size_) {
      throw UsageError("unrank: rank " + tarski::to_string(r) + " out of range (|L| = " +
                       tarski::to_string(size_) + ")");
    }
    std::vector<Coord> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      Size128 q = r / strides_[i];
      r %= strides_[i];
      c[i] = static_cast<Coord>(static_cast<__int128>(lo_[i]) + static_cast<__int128>(q));
    }
    return Point(std::move(c));
  }

  enum class SubBoxDir { UpSet, DownSet };

  /// UpSet: [corner, upper]. DownSet: [lower, corner].
  BoxLattice sub_box(const Point& corner, SubBoxDir dir) const {
    require_inside(corner, "sub_box");
    if (dir == SubBoxDir::UpSet) return BoxLattice(corner, up_);
    return BoxLattice(lo_, corner);
  }

  friend bool operator==(const BoxLattice& a, const BoxLattice& b) {
    return a.lo_ == b.lo_ && a.up_ == b.up_;
  }
  friend bool operator!=(const BoxLattice& a, const BoxLattice& b) { return !(a == b); }

 private:
  void require_inside(const Point& x, const char* op) const {
    require_same_dim(x, lo_, op);
    if (!contains(x)) {
      throw UsageError(std::string(op) + ": point " + tarski::to_string(x) +
                       " outside box [" + tarski::to_string(lo_) + ", " +
                       tarski::to_string(up_) + "]");
    }
  }

  Point lo_, up_;
  std::vector<Size128> strides_;
  Size128 size_ = 0;
};

inline std::string to_string(Size128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

inline std::string to_string(const BoxLattice& b) {
  return "[" + to_string(b.lower()) + ", " + to_string(b.upper()) + "]";
}

/// Odometer over all points of a box in rank (lexicographic) order.
class BoxIterator {
 public:
  explicit BoxIterator(const BoxLattice& box) : box_(box), cur_(box.lower()), valid_(true) {}

  bool valid() const { return valid_; }
  const Point& operator*() const { return cur_; }

  BoxIterator& operator++() {
    for (std::size_t i = box_.dim(); i-- > 0;) {
      if (cur_[i] < box_.upper()[i]) {
        ++cur_[i];
        return *this;
      }
      cur_[i] = box_.lower()[i];
    }
    valid_ = false;
    return *this;
  }

 private:
  const BoxLattice& box_;
  Point cur_;
  bool valid_;
};

}  // namespace tarski

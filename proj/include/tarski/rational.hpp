#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tarski/errors.hpp"
#include "tarski/point.hpp"

namespace tarski {

// Exact arbitrary-precision rational, always reduced, denominator > 0.
// Backed by boost::multiprecision; nothing in the polytope pipeline may
// touch floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" (q > 0 after normalization).
Rational parse_rational(const std::string& text);

/// "p" or "p/q", lowest terms.
std::string rat_to_string(const Rational& r);

BigInt floor_rat(const Rational& r);
BigInt ceil_rat(const Rational& r);

/// Checked narrowing for lattice coordinates.
Coord to_coord(const BigInt& v);

inline RatVec rat_vec(const Point& p) {
  RatVec v;
  v.reserve(p.dim());
  for (Coord c : p) v.emplace_back(c);
  return v;
}

std::string rat_vec_to_string(const RatVec& v);

}  // namespace tarski

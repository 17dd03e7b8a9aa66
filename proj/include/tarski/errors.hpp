#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tarski/point.hpp"

namespace tarski {

/// Bad arguments or malformed input data. Maps to CLI exit 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A capacity gate was exceeded (brute force on a huge box, etc.).
/// Maps to CLI exit 3.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observed evidence that an oracle breaks its declared contract
/// (nonmonotone answers, codomain escape, inconsistent best responses).
/// Carries the (query, answer) pairs that witness the breach.
/// Maps to CLI exit 2.
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what,
                             std::vector<std::pair<Point, Point>> witness = {})
      : std::runtime_error(what), witness_(std::move(witness)) {}

  const std::vector<std::pair<Point, Point>>& witness() const { return witness_; }

 private:
  std::vector<std::pair<Point, Point>> witness_;
};

}  // namespace tarski

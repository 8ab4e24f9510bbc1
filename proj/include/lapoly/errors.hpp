#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lapoly {

// Operator P(A) has a spectral value too close to zero to invert reliably.
class SingularOperatorError : public std::runtime_error {
public:
  SingularOperatorError(std::string what, std::int64_t mode, double value)
      : std::runtime_error(std::move(what)), mode(mode), value(value) {}

  std::int64_t mode; // offending flat mode index, 1-based
  double value;      // P(lambda) at that mode
};

// Dense elimination hit a pivot below the admissibility threshold.
class SingularMatrixError : public std::runtime_error {
public:
  SingularMatrixError(std::string what, std::int64_t pivot_index)
      : std::runtime_error(std::move(what)), pivot_index(pivot_index) {}

  std::int64_t pivot_index; // elimination column, 1-based
};

// A request exceeded a hard resource guard (dense size caps and the like).
class GuardExceededError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Field or coefficient tensor does not match the grid it is used with.
class GridMismatchError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace lapoly

#pragma once

#include <stdexcept>
#include <string>

namespace specdiff {

/// Raised when an input violates a precondition or a model assumption.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative computation fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace specdiff

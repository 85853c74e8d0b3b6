#pragma once

#include <stdexcept>

namespace nimbergeo {

/// Thrown when an operation exhausts its node or wall-time budget.
struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an input file or JSON document fails to parse or validate.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nimbergeo

#pragma once

#include <chrono>
#include <cstdint>

#include "nimbergeo/errors.hpp"

namespace nimbergeo {

/// Explicit resource limits for game evaluation. Every potentially expensive
/// operation takes one of these (or a BudgetMeter already tracking one) so
/// that exponential blowups surface as BudgetExceededError instead of an
/// unresponsive process.
struct Budget {
  std::uint64_t max_nodes = 500'000;
  std::chrono::milliseconds max_time = std::chrono::milliseconds{30'000};

  static Budget unlimited();
  static Budget nodes(std::uint64_t n);
};

/// Tracks consumption against a single Budget across a pipeline of operations.
/// One unit of charge corresponds to one newly materialized position, node, or
/// enumerated graph. The wall clock is sampled every few thousand charges to
/// keep the common path cheap.
class BudgetMeter {
 public:
  explicit BudgetMeter(const Budget& budget);

  /// Records `amount` units of work; throws BudgetExceededError if either the
  /// node or the time limit is now exhausted.
  void charge(std::uint64_t amount = 1);

  std::uint64_t used() const noexcept { return used_; }
  const Budget& budget() const noexcept { return budget_; }

 private:
  void check_clock();

  Budget budget_;
  std::uint64_t used_ = 0;
  std::uint64_t next_clock_check_ = 0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace nimbergeo

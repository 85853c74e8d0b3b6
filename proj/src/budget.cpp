#include "nimbergeo/budget.hpp"

#include <string>

namespace nimbergeo {

namespace {
constexpr std::uint64_t kClockStride = 4096;
}

Budget Budget::unlimited() {
  return Budget{.max_nodes = UINT64_MAX, .max_time = std::chrono::milliseconds::max()};
}

Budget Budget::nodes(std::uint64_t n) {
  return Budget{.max_nodes = n, .max_time = std::chrono::milliseconds::max()};
}

BudgetMeter::BudgetMeter(const Budget& budget)
    : budget_(budget),
      next_clock_check_(kClockStride),
      start_(std::chrono::steady_clock::now()) {}

void BudgetMeter::charge(std::uint64_t amount) {
  used_ += amount;
  if (used_ > budget_.max_nodes) {
    throw BudgetExceededError("node budget exceeded: used " + std::to_string(used_) +
                              " of " + std::to_string(budget_.max_nodes));
  }
  if (used_ >= next_clock_check_) check_clock();
}

void BudgetMeter::check_clock() {
  next_clock_check_ = used_ + kClockStride;
  if (budget_.max_time == std::chrono::milliseconds::max()) return;
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start_);
  if (elapsed > budget_.max_time) {
    throw BudgetExceededError("time budget exceeded: " + std::to_string(elapsed.count()) +
                              "ms elapsed of " + std::to_string(budget_.max_time.count()) +
                              "ms");
  }
}

}  // namespace nimbergeo

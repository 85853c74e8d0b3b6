#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "nimbergeo/budget.hpp"
#include "nimbergeo/nimber.hpp"

namespace nimbergeo {

/// Canonical serialized identity of a position. Two keys are equal iff the
/// positions have the same game tree, within one process run. Every ruleset
/// prefixes its keys with a scheme tag (and, where the ruleset is defined
/// relative to a base structure, a content fingerprint of that structure) so
/// keys from unrelated games never collide.
using PositionKey = std::string;

class Position;
using PositionPtr = std::shared_ptr<const Position>;

/// An impartial game position under normal play: the player unable to move
/// loses. Implementations are immutable; options() returns freshly built
/// successor positions in a deterministic order.
class Position {
 public:
  virtual ~Position() = default;

  virtual std::vector<PositionPtr> options() const = 0;
  virtual PositionKey key() const = 0;

  /// Rough encoding size of the position; options never grow it by more than
  /// a constant.
  virtual std::size_t size() const = 0;

  virtual bool is_terminal() const { return options().empty(); }
};

/// Grundy value of `root` by memoized depth-first search over position keys.
/// Uses an explicit stack, so deeply nested games cannot overflow the call
/// stack. One budget unit is charged per distinct position expanded. A cycle
/// among positions (impossible for well-formed finite games) raises
/// std::invalid_argument.
Nimber nimber_of(const PositionPtr& root, BudgetMeter& meter);
Nimber nimber_of(const PositionPtr& root, const Budget& budget);

/// Disjunctive sum: a move picks one component and moves in it; play ends
/// when both components are terminal.
PositionPtr disjunctive_sum(PositionPtr left, PositionPtr right);

class SumPosition final : public Position {
 public:
  SumPosition(PositionPtr left, PositionPtr right);

  std::vector<PositionPtr> options() const override;
  PositionKey key() const override;
  std::size_t size() const override;
  bool is_terminal() const override;

  const PositionPtr& left() const { return left_; }
  const PositionPtr& right() const { return right_; }

 private:
  PositionPtr left_;
  PositionPtr right_;
};

}  // namespace nimbergeo

#include "nimbergeo/game.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace nimbergeo {

namespace {

struct EvalFrame {
  PositionPtr pos;
  PositionKey key;
  std::vector<PositionPtr> opts;
  std::size_t next = 0;
  std::vector<std::uint32_t> child_values;
};

}  // namespace

Nimber nimber_of(const PositionPtr& root, BudgetMeter& meter) {
  if (!root) throw std::invalid_argument("nimber_of: null position");

  std::unordered_map<PositionKey, std::uint32_t> memo;
  std::unordered_set<PositionKey> open;  // keys on the current DFS path
  std::vector<EvalFrame> stack;

  auto push = [&](const PositionPtr& pos, PositionKey key) {
    meter.charge();
    EvalFrame frame;
    frame.pos = pos;
    frame.key = std::move(key);
    frame.opts = pos->options();
    frame.child_values.reserve(frame.opts.size());
    open.insert(frame.key);
    stack.push_back(std::move(frame));
  };

  push(root, root->key());

  std::uint32_t result = 0;
  while (!stack.empty()) {
    EvalFrame& top = stack.back();
    if (top.next < top.opts.size()) {
      const PositionPtr& child = top.opts[top.next];
      PositionKey child_key = child->key();
      if (auto it = memo.find(child_key); it != memo.end()) {
        top.child_values.push_back(it->second);
        ++top.next;
        continue;
      }
      if (open.contains(child_key)) {
        throw std::invalid_argument("nimber_of: cycle through position " + child_key);
      }
      push(child, std::move(child_key));  // invalidates `top`
      continue;
    }

    const std::uint32_t value = detail::mex_raw(top.child_values);
    memo.emplace(top.key, value);
    open.erase(top.key);
    stack.pop_back();
    if (stack.empty()) {
      result = value;
    } else {
      stack.back().child_values.push_back(value);
      ++stack.back().next;
    }
  }
  return Nimber{result};
}

Nimber nimber_of(const PositionPtr& root, const Budget& budget) {
  BudgetMeter meter(budget);
  return nimber_of(root, meter);
}

SumPosition::SumPosition(PositionPtr left, PositionPtr right)
    : left_(std::move(left)), right_(std::move(right)) {
  if (!left_ || !right_) throw std::invalid_argument("SumPosition: null component");
}

std::vector<PositionPtr> SumPosition::options() const {
  std::vector<PositionPtr> out;
  for (const PositionPtr& l : left_->options()) {
    out.push_back(std::make_shared<SumPosition>(l, right_));
  }
  for (const PositionPtr& r : right_->options()) {
    out.push_back(std::make_shared<SumPosition>(left_, r));
  }
  return out;
}

PositionKey SumPosition::key() const {
  // Length-prefix the left key so nested sums parse unambiguously.
  const PositionKey l = left_->key();
  const PositionKey r = right_->key();
  PositionKey out = "sum:";
  out += std::to_string(l.size());
  out += ':';
  out += l;
  out += ',';
  out += r;
  return out;
}

std::size_t SumPosition::size() const { return left_->size() + right_->size() + 1; }

bool SumPosition::is_terminal() const {
  return left_->is_terminal() && right_->is_terminal();
}

PositionPtr disjunctive_sum(PositionPtr left, PositionPtr right) {
  return std::make_shared<SumPosition>(std::move(left), std::move(right));
}

}  // namespace nimbergeo

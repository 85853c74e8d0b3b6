#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nimbergeo/game.hpp"

namespace nimbergeo {

struct GameDagNode {
  PositionKey key;
  /// One entry per option, in option order. Several entries may point at the
  /// same node: positions are deduplicated, move multiplicity is not, so the
  /// DAG still unfolds to the exact game tree.
  std::vector<std::uint32_t> children;

  friend bool operator==(const GameDagNode&, const GameDagNode&) = default;
};

/// A game graph with positions merged by key. Acyclic by construction for
/// well-formed games; height is the longest path from `start` to a sink.
struct GameDag {
  std::vector<GameDagNode> nodes;
  std::uint32_t start = 0;
  std::uint32_t height = 0;
  std::uint32_t max_branching = 0;
  std::uint64_t fingerprint = 0;

  std::size_t root_option_count() const { return nodes[start].children.size(); }

  friend bool operator==(const GameDag&, const GameDag&) = default;
};

/// Validates a hand-assembled DAG and fills the derived fields (height,
/// max_branching, fingerprint). Requires: start and all child indices in
/// range, keys unique, every node reachable from start, no directed cycle.
/// Throws std::invalid_argument otherwise.
void finalize_game_dag(GameDag& dag);

/// Explores the game reachable from `root`, merging positions by key.
/// Node ids are assigned in breadth-first discovery order, so the result is
/// deterministic. One budget unit per distinct position.
GameDag build_dag(const PositionPtr& root, BudgetMeter& meter);
GameDag build_dag(const PositionPtr& root, const Budget& budget);

/// Grundy values for every node at once, by one pass in reverse topological
/// order. values[dag.start] is the value of the game.
std::vector<Nimber> dag_nimbers(const GameDag& dag);
Nimber dag_nimber(const GameDag& dag);

/// Rooted ordered tree; node 0 is the root and children always carry larger
/// indices than their parent.
struct GameTree {
  struct Node {
    std::vector<std::uint32_t> children;
  };
  std::vector<Node> nodes;

  std::size_t size() const { return nodes.size(); }
};

std::uint32_t tree_height(const GameTree& tree);

/// Unfolds the DAG from its start node into the full game tree. Exponential
/// in general, hence metered: one budget unit per tree node.
GameTree tree_expand(const GameDag& dag, BudgetMeter& meter);
GameTree tree_expand(const GameDag& dag, const Budget& budget);

/// Tree of the disjunctive sum of the two games: each node is a pair of
/// component nodes and offers the component moves side by side (left
/// component's moves first). One budget unit per tree node.
GameTree tree_sum_expand(const GameDag& a, const GameDag& b, BudgetMeter& meter);
GameTree tree_sum_expand(const GameDag& a, const GameDag& b, const Budget& budget);
GameTree tree_sum_expand(const GameTree& a, const GameTree& b, BudgetMeter& meter);

/// Full game tree of a position, without any merging. One unit per node.
GameTree expand_game_tree(const PositionPtr& root, BudgetMeter& meter);
GameTree expand_game_tree(const PositionPtr& root, const Budget& budget);

}  // namespace nimbergeo

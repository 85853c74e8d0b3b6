#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nimbergeo/dag.hpp"

namespace nimbergeo {

/// Interns rooted unordered tree shapes: two trees get the same id iff they
/// are isomorphic (children compared as multisets). Interning is exact — the
/// table maps sorted child-id vectors to ids — while `digest` additionally
/// offers a stable 64-bit hash for cross-run reporting. Equality decisions
/// always use ids, never digests.
class ShapeTable {
 public:
  ShapeTable();

  std::uint32_t leaf_id() const { return 0; }

  /// Shape id for a node whose children have the given shape ids (any order).
  std::uint32_t intern(std::vector<std::uint32_t> children);

  std::uint32_t height(std::uint32_t id) const { return infos_[id].height; }
  std::uint64_t node_count(std::uint32_t id) const { return infos_[id].nodes; }
  std::uint32_t root_degree(std::uint32_t id) const {
    return static_cast<std::uint32_t>(infos_[id].children.size());
  }
  std::uint64_t digest(std::uint32_t id) const { return infos_[id].digest; }
  const std::vector<std::uint32_t>& children(std::uint32_t id) const {
    return infos_[id].children;
  }
  std::size_t size() const { return infos_.size(); }

 private:
  struct Info {
    std::vector<std::uint32_t> children;  // sorted shape ids
    std::uint32_t height = 0;
    std::uint64_t nodes = 1;
    std::uint64_t digest = 0;
  };
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids_;
  std::vector<Info> infos_;
};

/// Shape id of every node of the tree (indexed like tree.nodes).
std::vector<std::uint32_t> tree_shapes(const GameTree& tree, ShapeTable& table);

struct CanonicalForm {
  std::uint32_t shape_id = 0;   // valid within the table that produced it
  std::uint64_t digest = 0;     // stable across runs
  std::uint64_t tree_nodes = 0;
};

CanonicalForm canonical_form(const GameTree& tree, ShapeTable& table,
                             BudgetMeter& meter);
CanonicalForm canonical_form(const GameDag& dag, ShapeTable& table,
                             BudgetMeter& meter);

/// Exact node count of the tree sum of two trees with the given depth
/// profiles (profile[d] = number of nodes at depth d), computed as
/// sum over (i, j) of profile_a[i] * profile_b[j] * binom(i+j, i).
/// Returns cap+1 as soon as the count exceeds `cap`.
std::uint64_t tree_sum_node_count(const std::vector<std::uint64_t>& profile_a,
                                  const std::vector<std::uint64_t>& profile_b,
                                  std::uint64_t cap);
std::uint64_t tree_sum_node_count(const GameTree& a, const GameTree& b,
                                  std::uint64_t cap);

std::vector<std::uint64_t> depth_profile(const GameTree& tree);

/// Copy of the subtree rooted at `node` as a standalone tree.
GameTree extract_subtree(const GameTree& tree, std::uint32_t node);

enum class PrimeKind { prime, composite, budget_exceeded };

struct PrimeVerdict {
  PrimeKind kind = PrimeKind::prime;
  /// For composite verdicts: factor trees (A, B) with the original tree
  /// isomorphic to their tree sum and both factor heights >= 1.
  std::optional<std::pair<GameTree, GameTree>> witness;
  std::uint64_t tree_nodes = 0;
};

/// Decides whether the game tree is a tree sum of two games of height >= 1.
/// Candidate factors are drawn from the distinct subtree shapes, filtered by
/// height, root degree and the exact product node count, and every surviving
/// pair is confirmed by building the product and comparing shapes — so a
/// composite verdict always carries a checked witness, and a prime verdict
/// means no candidate pair survived.
PrimeVerdict is_prime_tree(const GameTree& tree, BudgetMeter& meter);
PrimeVerdict is_prime_game(const PositionPtr& game, const Budget& budget);

}  // namespace nimbergeo

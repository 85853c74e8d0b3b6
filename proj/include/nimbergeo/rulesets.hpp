#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nimbergeo/dag.hpp"
#include "nimbergeo/game.hpp"

namespace nimbergeo {

/// Nim: a move shrinks one pile. Piles are kept sorted descending with empty
/// piles dropped, so permuted inputs share one key ("nim:3,2,1").
class NimPosition final : public Position {
 public:
  /// Accepts piles in any order; negative counts are rejected.
  explicit NimPosition(std::vector<int> piles);

  std::vector<PositionPtr> options() const override;
  PositionKey key() const override;
  std::size_t size() const override;
  bool is_terminal() const override { return piles_.empty(); }

  const std::vector<int>& piles() const { return piles_; }

 private:
  std::vector<int> piles_;  // canonical: descending, no zeros
};

PositionPtr make_nim(std::vector<int> piles);

/// The nim-heap *k as a game: a single pile of k stones. star_game(0) is the
/// terminal game.
PositionPtr star_game(int k);

/// Undirected simple graph shared by all positions of one Node Kayles game.
/// At most 64 vertices, so vertex sets fit in one machine word.
struct KaylesGraph {
  std::vector<std::string> vertex_names;            // sorted, unique
  std::vector<std::pair<int, int>> edges;           // index pairs, u < v, sorted
  std::vector<std::uint64_t> closed_neighborhood;   // per vertex, includes itself
  std::uint64_t fingerprint = 0;
};

/// Validates and indexes the graph. Self-loops, duplicate edges, duplicate or
/// unknown vertex names, and graphs over 64 vertices are rejected.
std::shared_ptr<const KaylesGraph> make_kayles_graph(
    std::vector<std::string> vertices,
    std::vector<std::pair<std::string, std::string>> edges);

/// Node Kayles: a move picks a remaining vertex and removes it together with
/// all its neighbours.
class KaylesPosition final : public Position {
 public:
  KaylesPosition(std::shared_ptr<const KaylesGraph> graph, std::uint64_t alive);

  std::vector<PositionPtr> options() const override;
  PositionKey key() const override;
  std::size_t size() const override;
  bool is_terminal() const override { return alive_ == 0; }

 private:
  std::shared_ptr<const KaylesGraph> graph_;
  std::uint64_t alive_;
};

PositionPtr kayles_start(std::shared_ptr<const KaylesGraph> graph);

/// A game given directly as its (already merged) DAG: moves follow child
/// edges. Lets explicitly enumerated games reuse the generic machinery.
class ExplicitDagPosition final : public Position {
 public:
  ExplicitDagPosition(std::shared_ptr<const GameDag> dag, std::uint32_t node);

  std::vector<PositionPtr> options() const override;
  PositionKey key() const override;
  std::size_t size() const override;
  bool is_terminal() const override;

 private:
  std::shared_ptr<const GameDag> dag_;
  std::uint32_t node_;
};

PositionPtr dag_game(std::shared_ptr<const GameDag> dag);

}  // namespace nimbergeo

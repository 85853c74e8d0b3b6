#include "nimbergeo/rulesets.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include "nimbergeo/hashutil.hpp"

namespace nimbergeo {

NimPosition::NimPosition(std::vector<int> piles) : piles_(std::move(piles)) {
  for (int p : piles_) {
    if (p < 0) throw std::invalid_argument("nim pile sizes must be non-negative");
  }
  std::sort(piles_.begin(), piles_.end(), std::greater<int>());
  while (!piles_.empty() && piles_.back() == 0) piles_.pop_back();
}

std::vector<PositionPtr> NimPosition::options() const {
  std::vector<PositionPtr> out;
  for (std::size_t i = 0; i < piles_.size(); ++i) {
    for (int target = piles_[i] - 1; target >= 0; --target) {
      std::vector<int> next = piles_;
      next[i] = target;
      out.push_back(std::make_shared<NimPosition>(std::move(next)));
    }
  }
  return out;
}

PositionKey NimPosition::key() const {
  PositionKey key = "nim:";
  for (std::size_t i = 0; i < piles_.size(); ++i) {
    if (i > 0) key += ',';
    key += std::to_string(piles_[i]);
  }
  return key;
}

std::size_t NimPosition::size() const {
  std::size_t stones = 0;
  for (int p : piles_) stones += static_cast<std::size_t>(p);
  return piles_.size() + stones;
}

PositionPtr make_nim(std::vector<int> piles) {
  return std::make_shared<NimPosition>(std::move(piles));
}

PositionPtr star_game(int k) {
  if (k < 0) throw std::invalid_argument("star_game: k must be non-negative");
  return make_nim({k});
}

std::shared_ptr<const KaylesGraph> make_kayles_graph(
    std::vector<std::string> vertices,
    std::vector<std::pair<std::string, std::string>> edges) {
  auto graph = std::make_shared<KaylesGraph>();
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw std::invalid_argument("kayles graph has duplicate vertex names");
  }
  if (vertices.size() > 64) {
    throw std::invalid_argument("kayles graphs support at most 64 vertices");
  }
  graph->vertex_names = std::move(vertices);

  std::map<std::string, int> index;
  for (std::size_t i = 0; i < graph->vertex_names.size(); ++i) {
    index[graph->vertex_names[i]] = static_cast<int>(i);
  }

  for (const auto& [a, b] : edges) {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      throw std::invalid_argument("kayles edge references unknown vertex");
    }
    int u = ia->second;
    int v = ib->second;
    if (u == v) throw std::invalid_argument("kayles graph must not contain self-loops");
    if (u > v) std::swap(u, v);
    graph->edges.emplace_back(u, v);
  }
  std::sort(graph->edges.begin(), graph->edges.end());
  if (std::adjacent_find(graph->edges.begin(), graph->edges.end()) != graph->edges.end()) {
    throw std::invalid_argument("kayles graph has duplicate edges");
  }

  graph->closed_neighborhood.assign(graph->vertex_names.size(), 0);
  for (std::size_t v = 0; v < graph->vertex_names.size(); ++v) {
    graph->closed_neighborhood[v] = 1ULL << v;
  }
  for (const auto& [u, v] : graph->edges) {
    graph->closed_neighborhood[u] |= 1ULL << v;
    graph->closed_neighborhood[v] |= 1ULL << u;
  }

  detail::Fnv1a hash;
  hash.feed_u64(graph->vertex_names.size());
  for (const std::string& name : graph->vertex_names) hash.feed(name);
  hash.feed_u64(graph->edges.size());
  for (const auto& [u, v] : graph->edges) {
    hash.feed_u64(static_cast<std::uint64_t>(u));
    hash.feed_u64(static_cast<std::uint64_t>(v));
  }
  graph->fingerprint = hash.digest();
  return graph;
}

KaylesPosition::KaylesPosition(std::shared_ptr<const KaylesGraph> graph,
                               std::uint64_t alive)
    : graph_(std::move(graph)), alive_(alive) {
  if (!graph_) throw std::invalid_argument("KaylesPosition: null graph");
  const std::size_t n = graph_->vertex_names.size();
  if (n < 64 && (alive_ >> n) != 0) {
    throw std::invalid_argument("KaylesPosition: alive set out of range");
  }
}

std::vector<PositionPtr> KaylesPosition::options() const {
  std::vector<PositionPtr> out;
  for (std::uint64_t rest = alive_; rest != 0; rest &= rest - 1) {
    const int v = std::countr_zero(rest);
    out.push_back(std::make_shared<KaylesPosition>(
        graph_, alive_ & ~graph_->closed_neighborhood[v]));
  }
  return out;
}

PositionKey KaylesPosition::key() const {
  char buf[2 * 16 + 1];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(alive_));
  char fp[2 * 16 + 1];
  std::snprintf(fp, sizeof fp, "%016llx",
                static_cast<unsigned long long>(graph_->fingerprint));
  return PositionKey("kayles[") + fp + "]:" + buf;
}

std::size_t KaylesPosition::size() const {
  return static_cast<std::size_t>(std::popcount(alive_));
}

PositionPtr kayles_start(std::shared_ptr<const KaylesGraph> graph) {
  if (!graph) throw std::invalid_argument("kayles_start: null graph");
  const std::size_t n = graph->vertex_names.size();
  const std::uint64_t all = n == 64 ? ~0ULL : (1ULL << n) - 1;
  return std::make_shared<KaylesPosition>(std::move(graph), all);
}

ExplicitDagPosition::ExplicitDagPosition(std::shared_ptr<const GameDag> dag,
                                         std::uint32_t node)
    : dag_(std::move(dag)), node_(node) {
  if (!dag_) throw std::invalid_argument("ExplicitDagPosition: null dag");
  if (node_ >= dag_->nodes.size()) {
    throw std::invalid_argument("ExplicitDagPosition: node out of range");
  }
}

std::vector<PositionPtr> ExplicitDagPosition::options() const {
  std::vector<PositionPtr> out;
  const std::vector<std::uint32_t>& children = dag_->nodes[node_].children;
  out.reserve(children.size());
  for (std::uint32_t c : children) {
    out.push_back(std::make_shared<ExplicitDagPosition>(dag_, c));
  }
  return out;
}

PositionKey ExplicitDagPosition::key() const {
  char fp[2 * 16 + 1];
  std::snprintf(fp, sizeof fp, "%016llx",
                static_cast<unsigned long long>(dag_->fingerprint));
  return PositionKey("dag[") + fp + "]:" + std::to_string(node_);
}

std::size_t ExplicitDagPosition::size() const { return dag_->nodes.size(); }

bool ExplicitDagPosition::is_terminal() const {
  return dag_->nodes[node_].children.empty();
}

PositionPtr dag_game(std::shared_ptr<const GameDag> dag) {
  if (!dag) throw std::invalid_argument("dag_game: null dag");
  const std::uint32_t start = dag->start;
  return std::make_shared<ExplicitDagPosition>(std::move(dag), start);
}

}  // namespace nimbergeo

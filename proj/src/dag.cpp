#include "nimbergeo/dag.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "nimbergeo/hashutil.hpp"

namespace nimbergeo {

namespace {

/// Reverse topological order (sinks first) by Kahn's algorithm over the
/// multigraph; throws if a cycle exists.
std::vector<std::uint32_t> reverse_topo_order(const GameDag& dag) {
  const std::size_t n = dag.nodes.size();
  std::vector<std::uint64_t> indegree(n, 0);
  for (const GameDagNode& node : dag.nodes) {
    for (std::uint32_t c : node.children) ++indegree[c];
  }
  std::deque<std::uint32_t> ready;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::vector<std::uint32_t> order;  // sources first while building
  order.reserve(n);
  while (!ready.empty()) {
    const std::uint32_t u = ready.front();
    ready.pop_front();
    order.push_back(u);
    for (std::uint32_t c : dag.nodes[u].children) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  if (order.size() != n) {
    throw std::invalid_argument("game dag contains a directed cycle");
  }
  std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace

void finalize_game_dag(GameDag& dag) {
  const std::size_t n = dag.nodes.size();
  if (n == 0) throw std::invalid_argument("game dag has no nodes");
  if (dag.start >= n) throw std::invalid_argument("game dag start out of range");

  std::unordered_set<PositionKey> keys;
  for (const GameDagNode& node : dag.nodes) {
    if (!keys.insert(node.key).second) {
      throw std::invalid_argument("game dag has duplicate key: " + node.key);
    }
    for (std::uint32_t c : node.children) {
      if (c >= n) throw std::invalid_argument("game dag child index out of range");
    }
  }

  // Reachability from start.
  std::vector<bool> seen(n, false);
  std::deque<std::uint32_t> frontier{dag.start};
  seen[dag.start] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::uint32_t u = frontier.front();
    frontier.pop_front();
    for (std::uint32_t c : dag.nodes[u].children) {
      if (!seen[c]) {
        seen[c] = true;
        ++reached;
        frontier.push_back(c);
      }
    }
  }
  if (reached != n) {
    throw std::invalid_argument("game dag has nodes unreachable from start");
  }

  const std::vector<std::uint32_t> order = reverse_topo_order(dag);

  std::vector<std::uint32_t> height(n, 0);
  std::uint32_t max_branching = 0;
  for (std::uint32_t u : order) {
    const GameDagNode& node = dag.nodes[u];
    max_branching = std::max<std::uint32_t>(max_branching, node.children.size());
    std::uint32_t h = 0;
    for (std::uint32_t c : node.children) h = std::max(h, height[c] + 1);
    height[u] = h;
  }
  dag.height = height[dag.start];
  dag.max_branching = max_branching;

  detail::Fnv1a hash;
  hash.feed_u64(n);
  hash.feed_u64(dag.start);
  for (const GameDagNode& node : dag.nodes) {
    hash.feed(node.key);
    hash.feed_u64(node.children.size());
    for (std::uint32_t c : node.children) hash.feed_u64(c);
  }
  dag.fingerprint = hash.digest();
}

GameDag build_dag(const PositionPtr& root, BudgetMeter& meter) {
  if (!root) throw std::invalid_argument("build_dag: null position");

  GameDag dag;
  std::unordered_map<PositionKey, std::uint32_t> ids;
  std::vector<PositionPtr> by_id;

  auto intern = [&](const PositionPtr& pos) -> std::uint32_t {
    PositionKey key = pos->key();
    if (auto it = ids.find(key); it != ids.end()) return it->second;
    meter.charge();
    const auto id = static_cast<std::uint32_t>(dag.nodes.size());
    dag.nodes.push_back(GameDagNode{key, {}});
    ids.emplace(std::move(key), id);
    by_id.push_back(pos);
    return id;
  };

  intern(root);
  for (std::uint32_t i = 0; i < dag.nodes.size(); ++i) {
    std::vector<std::uint32_t> children;
    const std::vector<PositionPtr> opts = by_id[i]->options();
    children.reserve(opts.size());
    for (const PositionPtr& opt : opts) children.push_back(intern(opt));
    dag.nodes[i].children = std::move(children);
  }
  dag.start = 0;
  finalize_game_dag(dag);
  return dag;
}

GameDag build_dag(const PositionPtr& root, const Budget& budget) {
  BudgetMeter meter(budget);
  return build_dag(root, meter);
}

std::vector<Nimber> dag_nimbers(const GameDag& dag) {
  const std::vector<std::uint32_t> order = reverse_topo_order(dag);
  std::vector<std::uint32_t> value(dag.nodes.size(), 0);
  std::vector<std::uint32_t> child_values;
  for (std::uint32_t u : order) {
    child_values.clear();
    for (std::uint32_t c : dag.nodes[u].children) child_values.push_back(value[c]);
    value[u] = detail::mex_raw(child_values);
  }
  std::vector<Nimber> out;
  out.reserve(value.size());
  for (std::uint32_t v : value) out.push_back(Nimber{v});
  return out;
}

Nimber dag_nimber(const GameDag& dag) { return dag_nimbers(dag)[dag.start]; }

std::uint32_t tree_height(const GameTree& tree) {
  if (tree.nodes.empty()) return 0;
  // Children have larger indices, so one reverse sweep suffices.
  std::vector<std::uint32_t> height(tree.nodes.size(), 0);
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    std::uint32_t h = 0;
    for (std::uint32_t c : tree.nodes[i].children) h = std::max(h, height[c] + 1);
    height[i] = h;
  }
  return height[0];
}

namespace {

/// Shared worker for all tree expansions: `roots` seeds the root state and
/// `expand` lists the successor states of a state. States are opaque to this
/// function; every created tree node costs one budget unit.
template <typename State, typename Expand>
GameTree unfold_tree(const State& root, Expand&& expand, BudgetMeter& meter) {
  GameTree tree;
  meter.charge();
  tree.nodes.emplace_back();
  std::vector<std::pair<State, std::uint32_t>> stack{{root, 0}};
  std::vector<State> succ;
  while (!stack.empty()) {
    auto [state, idx] = stack.back();
    stack.pop_back();
    succ.clear();
    expand(state, succ);
    tree.nodes[idx].children.reserve(succ.size());
    for (const State& child_state : succ) {
      meter.charge();
      const auto child_idx = static_cast<std::uint32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes[idx].children.push_back(child_idx);
      stack.emplace_back(child_state, child_idx);
    }
  }
  return tree;
}

GameTree product_tree(const std::vector<GameDagNode>& a, std::uint32_t ra,
                      const std::vector<GameDagNode>& b, std::uint32_t rb,
                      BudgetMeter& meter) {
  using State = std::pair<std::uint32_t, std::uint32_t>;
  auto expand = [&](const State& s, std::vector<State>& out) {
    for (std::uint32_t c : a[s.first].children) out.emplace_back(c, s.second);
    for (std::uint32_t c : b[s.second].children) out.emplace_back(s.first, c);
  };
  return unfold_tree(State{ra, rb}, expand, meter);
}

std::vector<GameDagNode> tree_as_nodes(const GameTree& t) {
  std::vector<GameDagNode> nodes(t.nodes.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) nodes[i].children = t.nodes[i].children;
  return nodes;
}

}  // namespace

GameTree tree_expand(const GameDag& dag, BudgetMeter& meter) {
  if (dag.nodes.empty()) throw std::invalid_argument("tree_expand: empty dag");
  auto expand = [&](std::uint32_t u, std::vector<std::uint32_t>& out) {
    out = dag.nodes[u].children;
  };
  return unfold_tree(dag.start, expand, meter);
}

GameTree tree_expand(const GameDag& dag, const Budget& budget) {
  BudgetMeter meter(budget);
  return tree_expand(dag, meter);
}

GameTree tree_sum_expand(const GameDag& a, const GameDag& b, BudgetMeter& meter) {
  if (a.nodes.empty() || b.nodes.empty()) {
    throw std::invalid_argument("tree_sum_expand: empty dag");
  }
  return product_tree(a.nodes, a.start, b.nodes, b.start, meter);
}

GameTree tree_sum_expand(const GameDag& a, const GameDag& b, const Budget& budget) {
  BudgetMeter meter(budget);
  return tree_sum_expand(a, b, meter);
}

GameTree tree_sum_expand(const GameTree& a, const GameTree& b, BudgetMeter& meter) {
  return product_tree(tree_as_nodes(a), 0, tree_as_nodes(b), 0, meter);
}

GameTree expand_game_tree(const PositionPtr& root, BudgetMeter& meter) {
  if (!root) throw std::invalid_argument("expand_game_tree: null position");
  auto expand = [&](const PositionPtr& pos, std::vector<PositionPtr>& out) {
    out = pos->options();
  };
  return unfold_tree(root, expand, meter);
}

GameTree expand_game_tree(const PositionPtr& root, const Budget& budget) {
  BudgetMeter meter(budget);
  return expand_game_tree(root, meter);
}

}  // namespace nimbergeo

#include "nimbergeo/primality.hpp"

#include <algorithm>
#include <stdexcept>

#include "nimbergeo/hashutil.hpp"

namespace nimbergeo {

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, std::uint64_t sat) {
  if (a >= sat || b >= sat - a) return sat;
  return a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, std::uint64_t sat) {
  if (a == 0 || b == 0) return 0;
  if (a > sat / b) return sat;
  return std::min(a * b, sat);
}

}  // namespace

ShapeTable::ShapeTable() {
  Info leaf;
  detail::Fnv1a hash;
  hash.feed("leaf");
  leaf.digest = hash.digest();
  ids_.emplace(std::vector<std::uint32_t>{}, 0);
  infos_.push_back(std::move(leaf));
}

std::uint32_t ShapeTable::intern(std::vector<std::uint32_t> children) {
  std::sort(children.begin(), children.end());
  if (!children.empty() && children.back() >= infos_.size()) {
    throw std::invalid_argument("ShapeTable::intern: unknown child shape id");
  }
  if (const auto it = ids_.find(children); it != ids_.end()) return it->second;

  Info info;
  detail::Fnv1a hash;
  hash.feed("node");
  hash.feed_u64(children.size());
  for (std::uint32_t c : children) {
    const Info& child = infos_[c];
    info.height = std::max(info.height, child.height + 1);
    info.nodes = sat_add(info.nodes, child.nodes, UINT64_MAX);
    hash.feed_u64(child.digest);
  }
  info.digest = hash.digest();
  info.children = children;

  const auto id = static_cast<std::uint32_t>(infos_.size());
  ids_.emplace(std::move(children), id);
  infos_.push_back(std::move(info));
  return id;
}

std::vector<std::uint32_t> tree_shapes(const GameTree& tree, ShapeTable& table) {
  const std::size_t n = tree.nodes.size();
  if (n == 0) throw std::invalid_argument("tree_shapes: empty tree");
  std::vector<std::uint32_t> shape(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    const std::vector<std::uint32_t>& children = tree.nodes[i].children;
    std::vector<std::uint32_t> kid_shapes;
    kid_shapes.reserve(children.size());
    for (std::uint32_t c : children) {
      if (c <= i || c >= n) {
        throw std::invalid_argument("tree_shapes: children must have larger indices");
      }
      kid_shapes.push_back(shape[c]);
    }
    shape[i] = table.intern(std::move(kid_shapes));
  }
  return shape;
}

CanonicalForm canonical_form(const GameTree& tree, ShapeTable& table,
                             BudgetMeter& meter) {
  meter.charge(tree.nodes.size());
  const std::vector<std::uint32_t> shapes = tree_shapes(tree, table);
  return CanonicalForm{shapes[0], table.digest(shapes[0]), tree.nodes.size()};
}

CanonicalForm canonical_form(const GameDag& dag, ShapeTable& table,
                             BudgetMeter& meter) {
  const GameTree tree = tree_expand(dag, meter);
  return canonical_form(tree, table, meter);
}

std::uint64_t tree_sum_node_count(const std::vector<std::uint64_t>& profile_a,
                                  const std::vector<std::uint64_t>& profile_b,
                                  std::uint64_t cap) {
  if (profile_a.empty() || profile_b.empty()) return 0;
  if (cap == UINT64_MAX) --cap;
  const std::uint64_t sat = cap + 1;

  // row[j] walks binom(i+j, i) down the rows of Pascal's grid; all arithmetic
  // saturates at sat = cap+1, which is all the caller can distinguish anyway.
  std::vector<std::uint64_t> row(profile_b.size(), 1);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < profile_a.size(); ++i) {
    if (i > 0) {
      for (std::size_t j = 1; j < row.size(); ++j) {
        row[j] = sat_add(row[j], row[j - 1], sat);
      }
    }
    for (std::size_t j = 0; j < profile_b.size(); ++j) {
      const std::uint64_t term =
          sat_mul(sat_mul(profile_a[i], profile_b[j], sat), row[j], sat);
      total = sat_add(total, term, sat);
    }
    if (total >= sat) return sat;
  }
  return total;
}

std::vector<std::uint64_t> depth_profile(const GameTree& tree) {
  std::vector<std::uint32_t> depth(tree.nodes.size(), 0);
  std::vector<std::uint64_t> profile(tree_height(tree) + 1, 0);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    profile[depth[i]] += 1;
    for (std::uint32_t c : tree.nodes[i].children) depth[c] = depth[i] + 1;
  }
  return profile;
}

std::uint64_t tree_sum_node_count(const GameTree& a, const GameTree& b,
                                  std::uint64_t cap) {
  return tree_sum_node_count(depth_profile(a), depth_profile(b), cap);
}

GameTree extract_subtree(const GameTree& tree, std::uint32_t node) {
  if (node >= tree.nodes.size()) {
    throw std::invalid_argument("extract_subtree: node out of range");
  }
  GameTree out;
  out.nodes.emplace_back();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{node, 0}};
  while (!stack.empty()) {
    const auto [src, dst] = stack.back();
    stack.pop_back();
    out.nodes[dst].children.reserve(tree.nodes[src].children.size());
    for (std::uint32_t c : tree.nodes[src].children) {
      const auto idx = static_cast<std::uint32_t>(out.nodes.size());
      out.nodes.emplace_back();
      out.nodes[dst].children.push_back(idx);
      stack.emplace_back(c, idx);
    }
  }
  return out;
}

namespace {

PrimeVerdict prime_search(const GameTree& tree, BudgetMeter& meter) {
  PrimeVerdict verdict;
  verdict.tree_nodes = tree.nodes.size();
  const std::uint64_t n = tree.nodes.size();
  // The smallest composite tree is the sum of two one-move games: 5 nodes.
  if (n < 5) return verdict;

  meter.charge(n);
  ShapeTable table;
  const std::vector<std::uint32_t> shapes = tree_shapes(tree, table);
  const std::uint32_t root = shapes[0];
  const std::uint32_t full_height = table.height(root);
  const std::uint32_t root_degree = table.root_degree(root);
  // A product offers the moves of both factors at its root and stacks their
  // heights, so factors of height >= 1 each need height >= 2 and degree >= 2.
  if (full_height < 2 || root_degree < 2) return verdict;

  // First representative node of every distinct subtree shape.
  std::map<std::uint32_t, std::uint32_t> representative;
  for (std::uint32_t i = 0; i < shapes.size(); ++i) {
    representative.emplace(shapes[i], i);
  }

  // Depth profiles per shape; child shape ids are always smaller than the
  // parent's, so one ascending pass suffices.
  std::vector<std::vector<std::uint64_t>> profile(table.size());
  for (std::uint32_t id = 0; id < table.size(); ++id) {
    std::vector<std::uint64_t>& p = profile[id];
    p.assign(table.height(id) + 1, 0);
    p[0] = 1;
    for (std::uint32_t c : table.children(id)) {
      for (std::size_t d = 0; d < profile[c].size(); ++d) p[d + 1] += profile[c][d];
    }
  }

  std::map<std::uint32_t, std::vector<std::uint32_t>> by_height;
  for (const auto& [shape, node] : representative) {
    const std::uint32_t h = table.height(shape);
    if (h >= 1 && h <= full_height - 1) by_height[h].push_back(shape);
  }

  // Factor candidates must split the height exactly (product height is the
  // sum of factor heights) and the root degree exactly; the product node
  // count formula then leaves only pairs that could possibly match, each of
  // which is confirmed or refuted by actually building the product.
  for (std::uint32_t ha = 1; 2 * ha <= full_height; ++ha) {
    const std::uint32_t hb = full_height - ha;
    const auto bucket_a = by_height.find(ha);
    const auto bucket_b = by_height.find(hb);
    if (bucket_a == by_height.end() || bucket_b == by_height.end()) continue;
    for (const std::uint32_t sa : bucket_a->second) {
      for (const std::uint32_t sb : bucket_b->second) {
        if (ha == hb && sb < sa) continue;
        if (table.root_degree(sa) + table.root_degree(sb) != root_degree) continue;
        if (tree_sum_node_count(profile[sa], profile[sb], n) != n) continue;

        GameTree factor_a = extract_subtree(tree, representative.at(sa));
        GameTree factor_b = extract_subtree(tree, representative.at(sb));
        const GameTree product = tree_sum_expand(factor_a, factor_b, meter);
        if (tree_shapes(product, table)[0] == root) {
          verdict.kind = PrimeKind::composite;
          verdict.witness.emplace(std::move(factor_a), std::move(factor_b));
          return verdict;
        }
      }
    }
  }
  return verdict;
}

}  // namespace

PrimeVerdict is_prime_tree(const GameTree& tree, BudgetMeter& meter) {
  try {
    return prime_search(tree, meter);
  } catch (const BudgetExceededError&) {
    PrimeVerdict verdict;
    verdict.kind = PrimeKind::budget_exceeded;
    verdict.tree_nodes = tree.nodes.size();
    return verdict;
  }
}

PrimeVerdict is_prime_game(const PositionPtr& game, const Budget& budget) {
  BudgetMeter meter(budget);
  GameTree tree;
  try {
    tree = expand_game_tree(game, meter);
  } catch (const BudgetExceededError&) {
    PrimeVerdict verdict;
    verdict.kind = PrimeKind::budget_exceeded;
    return verdict;
  }
  return is_prime_tree(tree, meter);
}

}  // namespace nimbergeo

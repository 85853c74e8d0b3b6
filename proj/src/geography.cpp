#include "nimbergeo/geography.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <deque>
#include <set>
#include <stdexcept>

#include "nimbergeo/hashutil.hpp"

namespace nimbergeo {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

bool test_bit(const std::vector<std::uint64_t>& words, int i) {
  return (words[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1;
}

void clear_bit(std::vector<std::uint64_t>& words, int i) {
  words[static_cast<std::size_t>(i) >> 6] &= ~(1ULL << (i & 63));
}

std::string hex_words(const std::vector<std::uint64_t>& words) {
  std::string out;
  out.reserve(words.size() * 16);
  for (std::uint64_t w : words) out += hex64(w);
  return out;
}

std::vector<std::uint64_t> full_bitset(std::size_t bits) {
  std::vector<std::uint64_t> words((bits + 63) / 64, ~0ULL);
  if (bits % 64 != 0 && !words.empty()) words.back() = (1ULL << (bits % 64)) - 1;
  return words;
}

}  // namespace

GeoGraph make_geo(std::vector<std::string> vertices,
                  std::vector<std::pair<std::string, std::string>> edges,
                  std::string token,
                  std::map<std::string, std::string> labels) {
  GeoGraph g;
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw std::invalid_argument("geography instance has duplicate vertices");
  }
  g.vertices = std::move(vertices);

  if (g.vertices.empty()) {
    if (!token.empty() || !edges.empty() || !labels.empty()) {
      throw std::invalid_argument("empty geography instance must have no token/edges/labels");
    }
    return g;
  }

  auto known = [&](const std::string& v) {
    return std::binary_search(g.vertices.begin(), g.vertices.end(), v);
  };

  for (const auto& [u, v] : edges) {
    if (!known(u) || !known(v)) {
      throw std::invalid_argument("geography edge references unknown vertex");
    }
    if (u == v) throw std::invalid_argument("geography instance must not contain self-loops");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("geography instance has duplicate edges");
  }
  g.edges = std::move(edges);

  if (!known(token)) throw std::invalid_argument("geography token is not a vertex");
  g.token = std::move(token);

  for (const auto& [v, tag] : labels) {
    if (!known(v)) throw std::invalid_argument("geography label on unknown vertex: " + v);
    (void)tag;
  }
  g.labels = std::move(labels);
  return g;
}

std::vector<GeoGraph> geo_options(const GeoGraph& g) {
  const GeoGraph canon = make_geo(g.vertices, g.edges, g.token, g.labels);
  if (canon.vertices.empty()) {
    throw std::invalid_argument("geo_options: empty instance");
  }
  std::vector<GeoGraph> out;
  for (const auto& [u, w] : canon.edges) {
    if (u != canon.token) continue;
    std::vector<std::string> vertices;
    vertices.reserve(canon.vertices.size() - 1);
    for (const std::string& v : canon.vertices) {
      if (v != canon.token) vertices.push_back(v);
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : canon.edges) {
      if (e.first != canon.token && e.second != canon.token) edges.push_back(e);
    }
    std::map<std::string, std::string> labels = canon.labels;
    labels.erase(canon.token);
    out.push_back(make_geo(std::move(vertices), std::move(edges), w, std::move(labels)));
  }
  return out;
}

std::vector<GeoGraph> edge_geo_options(const GeoGraph& g) {
  const GeoGraph canon = make_geo(g.vertices, g.edges, g.token, g.labels);
  if (canon.vertices.empty()) {
    throw std::invalid_argument("edge_geo_options: empty instance");
  }
  std::vector<GeoGraph> out;
  for (const auto& [u, w] : canon.edges) {
    if (u != canon.token) continue;
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : canon.edges) {
      if (e != std::make_pair(u, w)) edges.push_back(e);
    }
    out.push_back(make_geo(canon.vertices, std::move(edges), w, canon.labels));
  }
  return out;
}

GeoCore::GeoCore(const GeoGraph& g) {
  names_ = g.vertices;
  const int n = static_cast<int>(names_.size());
  out_.assign(n, {});
  out_edge_ids_.assign(n, {});
  edges_.reserve(g.edges.size());
  for (const auto& [u, v] : g.edges) {
    const int ui = index_of(u);
    const int vi = index_of(v);
    const int eid = static_cast<int>(edges_.size());
    edges_.emplace_back(ui, vi);
    out_[ui].push_back(vi);
    out_edge_ids_[ui].push_back(eid);
  }
  token_ = g.token.empty() ? -1 : index_of(g.token);

  // Kahn's algorithm; fills topo_ iff acyclic.
  std::vector<int> indegree(n, 0);
  for (const auto& [u, v] : edges_) ++indegree[v];
  std::deque<int> ready;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int u = ready.front();
    ready.pop_front();
    order.push_back(u);
    for (int v : out_[u]) {
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  acyclic_ = static_cast<int>(order.size()) == n;
  if (acyclic_) topo_ = std::move(order);

  detail::Fnv1a hash;
  hash.feed_u64(names_.size());
  for (const std::string& name : names_) hash.feed(name);
  hash.feed_u64(edges_.size());
  for (const auto& [u, v] : edges_) {
    hash.feed_u64(static_cast<std::uint64_t>(u));
    hash.feed_u64(static_cast<std::uint64_t>(v));
  }
  fingerprint_ = hash.digest();
}

int GeoCore::index_of(const std::string& name) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return -1;
  return static_cast<int>(it - names_.begin());
}

GeoCorePtr compile_geo(const GeoGraph& g) {
  // Re-canonicalize so hand-assembled structs get the same validation as
  // imported ones.
  return std::make_shared<GeoCore>(make_geo(g.vertices, g.edges, g.token, g.labels));
}

std::vector<Nimber> geo_static_values(const GeoCore& core) {
  if (!core.acyclic()) {
    throw std::invalid_argument("geo_static_values requires an acyclic instance");
  }
  const int n = core.vertex_count();
  std::vector<std::uint32_t> value(n, 0);
  std::vector<std::uint32_t> child_values;
  const std::vector<int>& topo = core.topo();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    child_values.clear();
    for (int w : core.out()[*it]) child_values.push_back(value[w]);
    value[*it] = detail::mex_raw(child_values);
  }
  std::vector<Nimber> out;
  out.reserve(value.size());
  for (std::uint32_t v : value) out.push_back(Nimber{v});
  return out;
}

namespace {

/// Token-on-vertex play with vertex deletion, over a shared compiled core.
/// On acyclic cores the key is the token alone: nothing deleted during play
/// is ever reachable again, so equal tokens give isomorphic subtrees.
/// On cyclic cores the key is (reachable remaining set, token).
class VertexGeoPosition final : public Position {
 public:
  VertexGeoPosition(GeoCorePtr core, std::vector<std::uint64_t> alive, int token)
      : core_(std::move(core)), alive_(std::move(alive)), token_(token) {}

  std::vector<PositionPtr> options() const override {
    std::vector<PositionPtr> out;
    std::vector<std::uint64_t> next = alive_;
    clear_bit(next, token_);
    for (int w : core_->out()[token_]) {
      if (!test_bit(next, w)) continue;
      out.push_back(std::make_shared<VertexGeoPosition>(core_, next, w));
    }
    return out;
  }

  PositionKey key() const override {
    PositionKey key = "geo[" + hex64(core_->fingerprint()) + "]:";
    if (!core_->acyclic()) {
      key += 'm';
      key += hex_words(reachable_alive());
      key += ':';
    }
    key += 't';
    key += std::to_string(token_);
    return key;
  }

  std::size_t size() const override {
    std::size_t count = 0;
    for (std::uint64_t w : alive_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
  }

 private:
  /// Remaining vertices restricted to those reachable from the token; the
  /// rest can never influence play from here.
  std::vector<std::uint64_t> reachable_alive() const {
    std::vector<std::uint64_t> mask(alive_.size(), 0);
    std::deque<int> frontier{token_};
    mask[static_cast<std::size_t>(token_) >> 6] |= 1ULL << (token_ & 63);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop_front();
      for (int w : core_->out()[u]) {
        if (!test_bit(alive_, w) || test_bit(mask, w)) continue;
        mask[static_cast<std::size_t>(w) >> 6] |= 1ULL << (w & 63);
        frontier.push_back(w);
      }
    }
    return mask;
  }

  GeoCorePtr core_;
  std::vector<std::uint64_t> alive_;
  int token_;
};

/// Token-on-vertex play with edge deletion. Acyclic cores again key on the
/// token alone (a traversed edge can never be reached twice on a DAG);
/// cyclic cores key on (reachable remaining edge set, token).
class EdgeGeoPosition final : public Position {
 public:
  EdgeGeoPosition(GeoCorePtr core, std::vector<std::uint64_t> alive_edges, int token)
      : core_(std::move(core)), alive_edges_(std::move(alive_edges)), token_(token) {}

  std::vector<PositionPtr> options() const override {
    std::vector<PositionPtr> out;
    for (int eid : core_->out_edge_ids()[token_]) {
      if (!test_bit(alive_edges_, eid)) continue;
      std::vector<std::uint64_t> next = alive_edges_;
      clear_bit(next, eid);
      out.push_back(std::make_shared<EdgeGeoPosition>(core_, std::move(next),
                                                      core_->edges()[eid].second));
    }
    return out;
  }

  PositionKey key() const override {
    PositionKey key = "egeo[" + hex64(core_->fingerprint()) + "]:";
    if (!core_->acyclic()) {
      key += 'm';
      key += hex_words(reachable_edges());
      key += ':';
    }
    key += 't';
    key += std::to_string(token_);
    return key;
  }

  std::size_t size() const override {
    std::size_t count = 0;
    for (std::uint64_t w : alive_edges_) count += static_cast<std::size_t>(std::popcount(w));
    return count + 1;
  }

 private:
  std::vector<std::uint64_t> reachable_edges() const {
    std::vector<std::uint64_t> mask(alive_edges_.size(), 0);
    std::vector<bool> seen(core_->vertex_count(), false);
    std::deque<int> frontier{token_};
    seen[token_] = true;
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop_front();
      for (int eid : core_->out_edge_ids()[u]) {
        if (!test_bit(alive_edges_, eid)) continue;
        mask[static_cast<std::size_t>(eid) >> 6] |= 1ULL << (eid & 63);
        const int w = core_->edges()[eid].second;
        if (!seen[w]) {
          seen[w] = true;
          frontier.push_back(w);
        }
      }
    }
    return mask;
  }

  GeoCorePtr core_;
  std::vector<std::uint64_t> alive_edges_;
  int token_;
};

GeoCorePtr compile_playable(const GeoGraph& g) {
  GeoCorePtr core = compile_geo(g);
  if (core->vertex_count() == 0) {
    throw std::invalid_argument("empty geography instance cannot be played");
  }
  return core;
}

}  // namespace

Nimber geo_nimber(const GeoGraph& g, BudgetMeter& meter) {
  GeoCorePtr core = compile_playable(g);
  if (core->acyclic()) {
    meter.charge(static_cast<std::uint64_t>(core->vertex_count()));
    return geo_static_values(*core)[core->token()];
  }
  auto root = std::make_shared<VertexGeoPosition>(
      core, full_bitset(core->names().size()), core->token());
  return nimber_of(root, meter);
}

Nimber geo_nimber(const GeoGraph& g, const Budget& budget) {
  BudgetMeter meter(budget);
  return geo_nimber(g, meter);
}

Nimber edge_geo_nimber(const GeoGraph& g, BudgetMeter& meter) {
  GeoCorePtr core = compile_playable(g);
  if (core->acyclic()) {
    meter.charge(static_cast<std::uint64_t>(core->vertex_count()));
    return geo_static_values(*core)[core->token()];
  }
  auto root = std::make_shared<EdgeGeoPosition>(
      core, full_bitset(core->edges().size()), core->token());
  return nimber_of(root, meter);
}

Nimber edge_geo_nimber(const GeoGraph& g, const Budget& budget) {
  BudgetMeter meter(budget);
  return edge_geo_nimber(g, meter);
}

PositionPtr vertex_geo_position(const GeoGraph& g) {
  GeoCorePtr core = compile_playable(g);
  return std::make_shared<VertexGeoPosition>(core, full_bitset(core->names().size()),
                                             core->token());
}

PositionPtr edge_geo_position(const GeoGraph& g) {
  GeoCorePtr core = compile_playable(g);
  return std::make_shared<EdgeGeoPosition>(core, full_bitset(core->edges().size()),
                                           core->token());
}

GeoGraph dag_as_geography(const GameDag& dag) {
  const std::size_t n = dag.nodes.size();
  if (n == 0) throw std::invalid_argument("dag_as_geography: empty dag");

  int width = 1;
  for (std::size_t v = n - 1; v >= 10; v /= 10) ++width;

  auto name_of = [&](std::uint32_t idx) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%0*u", width, idx);
    return std::string(buf);
  };

  std::vector<std::string> vertices;
  vertices.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) vertices.push_back(name_of(i));

  std::vector<std::pair<std::string, std::string>> edges;
  for (std::uint32_t u = 0; u < n; ++u) {
    std::set<std::uint32_t> targets(dag.nodes[u].children.begin(),
                                    dag.nodes[u].children.end());
    for (std::uint32_t v : targets) edges.emplace_back(name_of(u), name_of(v));
  }

  GeoGraph g = make_geo(std::move(vertices), std::move(edges), name_of(dag.start));
  if (!compile_geo(g)->acyclic()) {
    throw std::invalid_argument("dag_as_geography: input contains a cycle");
  }
  return g;
}

nlohmann::json geo_to_json(const GeoGraph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertices;
  j["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : g.edges) j["edges"].push_back({u, v});
  j["token"] = g.token;
  j["labels"] = nlohmann::json::object();
  for (const auto& [v, tag] : g.labels) j["labels"][v] = tag;
  return j;
}

GeoGraph geo_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("geography document must be a JSON object");
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw ParseError("geography document needs a \"vertices\" array");
  }
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw ParseError("geography document needs an \"edges\" array");
  }
  if (!j.contains("token") || !j["token"].is_string()) {
    throw ParseError("geography document needs a string \"token\"");
  }

  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParseError("geography vertices must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw ParseError("geography edges must be [from, to] string pairs");
    }
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  std::map<std::string, std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_object()) throw ParseError("geography labels must be an object");
    for (const auto& [v, tag] : j["labels"].items()) {
      if (!tag.is_string()) throw ParseError("geography labels must map to strings");
      labels[v] = tag.get<std::string>();
    }
  }

  try {
    return make_geo(std::move(vertices), std::move(edges),
                    j["token"].get<std::string>(), std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string export_geo_json(const GeoGraph& g) { return geo_to_json(g).dump(2); }

GeoGraph import_geo_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return geo_from_json(j);
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string role_color(const std::string& tag) {
  const std::string role = tag.substr(0, tag.find('_'));
  if (role == "start") return "#ffcc80";
  if (role == "b") return "#bbdefb";
  if (role == "a") return "#eeeeee";
  if (role == "s") return "#f8bbd0";
  if (role == "t") return "#c8e6c9";
  if (role == "c") return "#fff59d";
  if (role == "d") return "#d1c4e9";
  return "#ffffff";
}

}  // namespace

std::string export_geo_dot(const GeoGraph& g) {
  std::string out = "digraph geography {\n  rankdir=LR;\n";
  for (const std::string& v : g.vertices) {
    out += "  \"" + dot_escape(v) + "\" [shape=";
    out += v == g.token ? "doublecircle" : "circle";
    const auto it = g.labels.find(v);
    if (it != g.labels.end()) {
      out += ", style=filled, fillcolor=\"" + role_color(it->second) + "\"";
      if (it->second != v) out += ", label=\"" + dot_escape(v + "\\n" + it->second) + "\"";
    }
    out += "];\n";
  }
  for (const auto& [u, v] : g.edges) {
    out += "  \"" + dot_escape(u) + "\" -> \"" + dot_escape(v) + "\";\n";
  }
  out += "}\n";
  return out;
}

namespace {

/// Flat-array evaluator used by the sweep: small n, every state is
/// (remaining-vertex mask, token).
struct SweepEval {
  int n = 0;
  const std::uint32_t* adj = nullptr;
  std::int8_t* memo = nullptr;
  std::uint64_t evals = 0;

  int value(std::uint32_t alive, int token) {
    std::int8_t& slot = memo[static_cast<std::size_t>(alive) * n + token];
    if (slot >= 0) return slot;
    ++evals;
    const std::uint32_t next_alive = alive & ~(1u << token);
    std::uint32_t targets = adj[token] & next_alive;
    std::uint32_t seen = 0;
    while (targets != 0) {
      const int w = std::countr_zero(targets);
      targets &= targets - 1;
      seen |= 1u << value(next_alive, w);
    }
    slot = static_cast<std::int8_t>(std::countr_one(seen));
    return slot;
  }
};

}  // namespace

SweepReport max_nimber_sweep(int max_vertices, std::optional<int> degree_bound,
                             DegreeNotion notion, BudgetMeter& meter) {
  if (max_vertices < 1 || max_vertices > 6) {
    throw std::invalid_argument("max_nimber_sweep supports 1..6 vertices");
  }
  if (degree_bound && *degree_bound < 0) {
    throw std::invalid_argument("max_nimber_sweep: negative degree bound");
  }

  SweepReport report;
  report.max_vertices = max_vertices;
  report.degree_bound = degree_bound;
  report.notion = notion;

  for (int n = 1; n <= max_vertices; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u != v) slots.emplace_back(u, v);
      }
    }
    const int m = static_cast<int>(slots.size());
    const std::uint64_t total = 1ULL << m;
    std::vector<std::int8_t> memo(static_cast<std::size_t>(n) << n);
    std::uint32_t adj[6];
    int indeg[6];
    int outdeg[6];
    const auto full = static_cast<std::uint32_t>((1u << n) - 1);

    for (std::uint64_t mask = 0; mask < total; ++mask) {
      meter.charge();
      ++report.graphs_enumerated;

      if (degree_bound) {
        std::fill(indeg, indeg + n, 0);
        std::fill(outdeg, outdeg + n, 0);
        for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
          const auto& [u, v] = slots[std::countr_zero(rest)];
          ++outdeg[u];
          ++indeg[v];
        }
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
          const int deg = notion == DegreeNotion::total_degree
                              ? indeg[v] + outdeg[v]
                              : std::max(indeg[v], outdeg[v]);
          ok = deg <= *degree_bound;
        }
        if (!ok) continue;
      }
      ++report.graphs_within_bound;

      std::fill(adj, adj + n, 0);
      for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
        const auto& [u, v] = slots[std::countr_zero(rest)];
        adj[u] |= 1u << v;
      }

      std::fill(memo.begin(), memo.end(), std::int8_t{-1});
      SweepEval eval{n, adj, memo.data(), 0};
      for (int token = 0; token < n; ++token) {
        const int value = eval.value(full, token);
        if (value > report.max_nimber) {
          report.max_nimber = value;
          std::vector<std::string> vertices;
          for (int v = 0; v < n; ++v) vertices.push_back("v" + std::to_string(v));
          std::vector<std::pair<std::string, std::string>> edges;
          for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
            const auto& [u, v] = slots[std::countr_zero(rest)];
            edges.emplace_back("v" + std::to_string(u), "v" + std::to_string(v));
          }
          report.witness =
              make_geo(std::move(vertices), std::move(edges), "v" + std::to_string(token));
        }
      }
      report.positions_evaluated += eval.evals;
    }
  }
  return report;
}

SweepReport max_nimber_sweep(int max_vertices, std::optional<int> degree_bound,
                             DegreeNotion notion, const Budget& budget) {
  BudgetMeter meter(budget);
  return max_nimber_sweep(max_vertices, degree_bound, notion, meter);
}

}  // namespace nimbergeo

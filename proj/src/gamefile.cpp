#include "nimbergeo/gamefile.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>

#include "nimbergeo/rng.hpp"
#include "nimbergeo/rulesets.hpp"

namespace nimbergeo {

namespace {

int require_count(const nlohmann::json& j, const char* field, int max) {
  if (!j.contains(field) || !j[field].is_number_integer()) {
    throw ParseError(std::string("game file needs an integer \"") + field + "\"");
  }
  const auto v = j[field].get<std::int64_t>();
  if (v < 0 || v > max) {
    throw ParseError(std::string("\"") + field + "\" out of range");
  }
  return static_cast<int>(v);
}

GameDag dag_from_json(const nlohmann::json& j) {
  if (!j.contains("start") || !j["start"].is_string()) {
    throw ParseError("dag game needs a string \"start\"");
  }
  if (!j.contains("nodes") || !j["nodes"].is_object()) {
    throw ParseError("dag game needs a \"nodes\" object");
  }

  GameDag dag;
  std::map<std::string, std::uint32_t> index;
  for (const auto& [id, children] : j["nodes"].items()) {
    (void)children;
    index.emplace(id, static_cast<std::uint32_t>(index.size()));
    dag.nodes.push_back(GameDagNode{id, {}});
  }
  for (const auto& [id, children] : j["nodes"].items()) {
    if (!children.is_array()) {
      throw ParseError("dag node \"" + id + "\" must map to an array of child ids");
    }
    std::vector<std::uint32_t>& out = dag.nodes[index.at(id)].children;
    for (const auto& c : children) {
      if (!c.is_string()) throw ParseError("dag child ids must be strings");
      const auto it = index.find(c.get<std::string>());
      if (it == index.end()) {
        throw ParseError("dag child references unknown node: " + c.get<std::string>());
      }
      out.push_back(it->second);
    }
  }
  const auto it = index.find(j["start"].get<std::string>());
  if (it == index.end()) throw ParseError("dag start references unknown node");
  dag.start = it->second;

  try {
    finalize_game_dag(dag);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return dag;
}

nlohmann::json dag_to_json(const GameDag& dag) {
  nlohmann::json j;
  j["start"] = dag.nodes[dag.start].key;
  j["nodes"] = nlohmann::json::object();
  for (const GameDagNode& node : dag.nodes) {
    nlohmann::json children = nlohmann::json::array();
    for (std::uint32_t c : node.children) children.push_back(dag.nodes[c].key);
    j["nodes"][node.key] = std::move(children);
  }
  return j;
}

}  // namespace

GameFile game_file_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("game file must be a JSON object");
  if (!j.contains("ruleset") || !j["ruleset"].is_string()) {
    throw ParseError("game file needs a string \"ruleset\"");
  }

  GameFile f;
  f.ruleset = j["ruleset"].get<std::string>();
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("game file \"name\" must be a string");
    f.name = j["name"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw ParseError("game file \"seed\" must be a non-negative integer");
    }
    f.seed = j["seed"].get<std::uint64_t>();
  }

  if (f.ruleset == "nim") {
    if (!j.contains("piles") || !j["piles"].is_array()) {
      throw ParseError("nim game needs a \"piles\" array");
    }
    for (const auto& p : j["piles"]) {
      if (!p.is_number_integer() || p.get<std::int64_t>() < 0 ||
          p.get<std::int64_t>() > 1'000'000) {
        throw ParseError("nim piles must be integers in [0, 1000000]");
      }
      f.nim_piles.push_back(static_cast<int>(p.get<std::int64_t>()));
    }
  } else if (f.ruleset == "star") {
    f.star_k = require_count(j, "k", 1'000'000);
  } else if (f.ruleset == "kayles") {
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
      throw ParseError("kayles game needs a \"vertices\" array");
    }
    for (const auto& v : j["vertices"]) {
      if (!v.is_string()) throw ParseError("kayles vertices must be strings");
      f.kayles_vertices.push_back(v.get<std::string>());
    }
    if (!j.contains("edges") || !j["edges"].is_array()) {
      throw ParseError("kayles game needs an \"edges\" array");
    }
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw ParseError("kayles edges must be [u, v] string pairs");
      }
      f.kayles_edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  } else if (f.ruleset == "dag") {
    f.dag = dag_from_json(j);
  } else if (f.ruleset == "geography" || f.ruleset == "edge-geography") {
    f.geo = geo_from_json(j);
    if (f.geo.vertices.empty()) {
      throw ParseError("geography game must have at least one vertex");
    }
  } else if (f.ruleset == "sum") {
    if (!j.contains("games") || !j["games"].is_array() || j["games"].size() != 2) {
      throw ParseError("sum game needs a \"games\" array of exactly two games");
    }
    for (const auto& part : j["games"]) f.parts.push_back(game_file_from_json(part));
  } else {
    throw ParseError("unknown ruleset: " + f.ruleset);
  }

  // Payloads that are only validated on construction (kayles graphs, nim
  // piles) get exercised once here so a parsed file is always playable.
  try {
    game_from_file(f);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return f;
}

nlohmann::json game_file_to_json(const GameFile& f) {
  nlohmann::json j;
  j["ruleset"] = f.ruleset;
  if (!f.name.empty()) j["name"] = f.name;
  if (f.seed) j["seed"] = *f.seed;

  if (f.ruleset == "nim") {
    j["piles"] = f.nim_piles;
  } else if (f.ruleset == "star") {
    j["k"] = f.star_k;
  } else if (f.ruleset == "kayles") {
    j["vertices"] = f.kayles_vertices;
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : f.kayles_edges) j["edges"].push_back({u, v});
  } else if (f.ruleset == "dag") {
    j.update(dag_to_json(f.dag));
  } else if (f.ruleset == "geography" || f.ruleset == "edge-geography") {
    j.update(geo_to_json(f.geo));
  } else if (f.ruleset == "sum") {
    j["games"] = nlohmann::json::array();
    for (const GameFile& part : f.parts) j["games"].push_back(game_file_to_json(part));
  } else {
    throw std::invalid_argument("unknown ruleset: " + f.ruleset);
  }
  return j;
}

GameFile parse_game_file(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return game_file_from_json(j);
}

std::string serialize_game_file(const GameFile& f) {
  return game_file_to_json(f).dump(2);
}

PositionPtr game_from_file(const GameFile& f) {
  if (f.ruleset == "nim") return make_nim(f.nim_piles);
  if (f.ruleset == "star") return star_game(f.star_k);
  if (f.ruleset == "kayles") {
    return kayles_start(make_kayles_graph(f.kayles_vertices, f.kayles_edges));
  }
  if (f.ruleset == "dag") return dag_game(std::make_shared<GameDag>(f.dag));
  if (f.ruleset == "geography") return vertex_geo_position(f.geo);
  if (f.ruleset == "edge-geography") return edge_geo_position(f.geo);
  if (f.ruleset == "sum") {
    if (f.parts.size() != 2) {
      throw std::invalid_argument("sum game needs exactly two components");
    }
    return disjunctive_sum(game_from_file(f.parts[0]), game_from_file(f.parts[1]));
  }
  throw std::invalid_argument("unknown ruleset: " + f.ruleset);
}

GameFile gen_nim(std::uint64_t seed, int max_piles, int max_stones) {
  if (max_piles < 1 || max_stones < 0) {
    throw std::invalid_argument("gen_nim: need max_piles >= 1 and max_stones >= 0");
  }
  DetRng rng(mix_seed(seed, 0x6e696d));
  GameFile f;
  f.ruleset = "nim";
  f.name = "nim-" + std::to_string(seed);
  f.seed = seed;
  const int piles = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_piles)));
  for (int i = 0; i < piles; ++i) {
    f.nim_piles.push_back(
        static_cast<int>(rng.below(static_cast<std::uint64_t>(max_stones) + 1)));
  }
  return f;
}

GameFile gen_kayles(std::uint64_t seed, int max_vertices, double edge_prob) {
  if (max_vertices < 1 || max_vertices > 64) {
    throw std::invalid_argument("gen_kayles: need max_vertices in [1, 64]");
  }
  DetRng rng(mix_seed(seed, 0x6b6179));
  GameFile f;
  f.ruleset = "kayles";
  f.name = "kayles-" + std::to_string(seed);
  f.seed = seed;
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vertices)));
  for (int v = 0; v < n; ++v) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "v%02d", v);
    f.kayles_vertices.emplace_back(buf);
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.coin(edge_prob)) {
        f.kayles_edges.emplace_back(f.kayles_vertices[u], f.kayles_vertices[v]);
      }
    }
  }
  return f;
}

GameFile gen_dag(std::uint64_t seed, int max_nodes, double edge_prob) {
  if (max_nodes < 1 || max_nodes > 9999) {
    throw std::invalid_argument("gen_dag: need max_nodes in [1, 9999]");
  }
  DetRng rng(mix_seed(seed, 0x646167));
  GameFile f;
  f.ruleset = "dag";
  f.name = "dag-" + std::to_string(seed);
  f.seed = seed;

  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_nodes)));
  auto node_id = [](int i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "n%04d", i);
    return std::string(buf);
  };
  f.dag.nodes.resize(n);
  for (int i = 0; i < n; ++i) f.dag.nodes[i].key = node_id(i);
  // Edges point from lower to higher index, so the graph is acyclic by
  // construction; a guaranteed parent for every non-root keeps it reachable.
  for (int j = 1; j < n; ++j) {
    const int parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(j)));
    for (int i = 0; i < j; ++i) {
      if (i == parent || rng.coin(edge_prob)) {
        f.dag.nodes[i].children.push_back(static_cast<std::uint32_t>(j));
      }
    }
  }
  f.dag.start = 0;
  finalize_game_dag(f.dag);
  return f;
}

}  // namespace nimbergeo

#include "nimbergeo/reduction.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nimbergeo/rulesets.hpp"

namespace nimbergeo {

namespace {

std::string role_id(const char* role, int i) {
  return std::string(role) + "_" + std::to_string(i);
}

/// Vertex/edge accumulator for assembling gadget graphs before validation.
struct GeoAccum {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::map<std::string, std::string> labels;

  void vertex(std::string id, std::string tag) {
    labels.emplace(id, std::move(tag));
    vertices.push_back(std::move(id));
  }

  void edge(std::string from, std::string to) {
    edges.emplace_back(std::move(from), std::move(to));
  }

  GeoGraph graph(std::string token) && {
    return make_geo(std::move(vertices), std::move(edges), std::move(token),
                    std::move(labels));
  }
};

void append_t_chain(GeoAccum& acc, int g) {
  for (int j = 0; j <= g - 2; ++j) {
    const std::string tj = role_id("t", j);
    acc.vertex(tj, tj);
    for (int l = 0; l < j; ++l) acc.edge(tj, role_id("t", l));
  }
}

/// Emits the b_i -> a_i -> s_i chain plus whatever answers the question
/// "is the input worth *i" below s_i. Payload vertex ids are namespaced with
/// "q<i>_" so the fragments never collide with each other or the wiring.
void append_qi_gadget(GeoAccum& acc, const std::shared_ptr<const GameDag>& dag,
                      int i, OracleMode mode, std::optional<Nimber> known_value,
                      BudgetMeter& meter) {
  const std::string b = role_id("b", i);
  const std::string a = role_id("a", i);
  const std::string s = role_id("s", i);
  meter.charge(3);
  acc.vertex(b, b);
  acc.vertex(a, a);
  acc.vertex(s, s);
  acc.edge(b, a);
  acc.edge(a, s);

  const std::string prefix = "q" + std::to_string(i) + "_";
  if (mode == OracleMode::product) {
    const GameDag payload =
        build_dag(disjunctive_sum(dag_game(dag), star_game(i)), meter);
    const GeoGraph payload_geo = dag_as_geography(payload);
    for (const std::string& v : payload_geo.vertices) acc.vertex(prefix + v, "payload");
    for (const auto& [u, v] : payload_geo.edges) acc.edge(prefix + u, prefix + v);
    acc.edge(s, prefix + payload_geo.token);
    return;
  }

  Nimber value;
  if (known_value) {
    value = *known_value;
  } else {
    meter.charge(dag->nodes.size());
    value = dag_nimber(*dag);
  }
  if (value == Nimber{static_cast<std::uint32_t>(i)}) {
    const std::string hit = prefix + "hit";
    meter.charge();
    acc.vertex(hit, "payload");
    acc.edge(s, hit);
  }
}

void check_reduction_input(const std::shared_ptr<const GameDag>& dag) {
  if (!dag || dag->nodes.empty()) {
    throw std::invalid_argument("reduction requires a non-empty game dag");
  }
}

}  // namespace

int grundy_bound(const GameDag& dag) {
  if (dag.nodes.empty()) throw std::invalid_argument("grundy_bound: empty dag");
  return static_cast<int>(
      std::min<std::uint64_t>(dag.height, dag.nodes[dag.start].children.size()));
}

GadgetBundle build_t_chain(int g) {
  if (g < 0) throw std::invalid_argument("build_t_chain: negative bound");
  GeoAccum acc;
  append_t_chain(acc, g);
  if (g < 2) return GadgetBundle{std::move(acc).graph(""), ""};
  const std::string entry = role_id("t", g - 2);
  return GadgetBundle{std::move(acc).graph(entry), entry};
}

GadgetBundle build_qi_gadget(const std::shared_ptr<const GameDag>& dag, int i,
                             OracleMode mode, BudgetMeter& meter) {
  check_reduction_input(dag);
  if (i < 0) throw std::invalid_argument("build_qi_gadget: negative index");
  GeoAccum acc;
  append_qi_gadget(acc, dag, i, mode, std::nullopt, meter);
  const std::string entry = role_id("b", i);
  return GadgetBundle{std::move(acc).graph(entry), entry};
}

GeoGraph reduce_dag_to_geography(const std::shared_ptr<const GameDag>& dag,
                                 OracleMode mode, BudgetMeter& meter) {
  check_reduction_input(dag);
  const int g = grundy_bound(*dag);

  std::optional<Nimber> known_value;
  if (mode == OracleMode::trusted) {
    meter.charge(dag->nodes.size());
    known_value = dag_nimber(*dag);
  }

  GeoAccum acc;
  meter.charge();
  acc.vertex("start", "start");

  for (int i = 0; i <= g; ++i) append_qi_gadget(acc, dag, i, mode, known_value, meter);

  meter.charge(static_cast<std::uint64_t>(std::max(0, g - 1)));
  append_t_chain(acc, g);

  for (int i = 1; i <= g; ++i) {
    const std::string ci = role_id("c", i);
    meter.charge();
    acc.vertex(ci, ci);
    acc.edge(ci, role_id("b", i));
    for (int j = 1; j <= i - 2; ++j) acc.edge(ci, role_id("t", j));
  }

  for (int i = 2; i <= g; ++i) {
    const std::string di = role_id("d", i);
    meter.charge();
    acc.vertex(di, di);
    acc.edge(di, role_id("b", 1));
    for (int j = 2; j <= i; ++j) acc.edge(di, role_id("c", j));
  }

  acc.edge("start", role_id("b", 0));
  if (g >= 1) acc.edge("start", role_id("c", 1));
  for (int i = 2; i <= g; ++i) acc.edge("start", role_id("d", i));

  return std::move(acc).graph("start");
}

GeoGraph reduce_to_geography(const PositionPtr& game, OracleMode mode,
                             BudgetMeter& meter) {
  auto dag = std::make_shared<GameDag>(build_dag(game, meter));
  return reduce_dag_to_geography(dag, mode, meter);
}

GeoGraph reduce_to_geography(const PositionPtr& game, OracleMode mode,
                             const Budget& budget) {
  BudgetMeter meter(budget);
  return reduce_to_geography(game, mode, meter);
}

GeoGraph encode_xor(const PositionPtr& a, const PositionPtr& b, OracleMode mode,
                    BudgetMeter& meter) {
  return reduce_to_geography(disjunctive_sum(a, b), mode, meter);
}

GeoGraph encode_xor(const PositionPtr& a, const PositionPtr& b, OracleMode mode,
                    const Budget& budget) {
  BudgetMeter meter(budget);
  return encode_xor(a, b, mode, meter);
}

std::uint64_t output_size_bound(const GameDag& dag, int g, BudgetMeter& meter) {
  if (dag.nodes.empty()) throw std::invalid_argument("output_size_bound: empty dag");
  if (g < 0) throw std::invalid_argument("output_size_bound: negative bound");

  std::uint64_t total = 1;                                    // start
  total += 3ULL * (static_cast<std::uint64_t>(g) + 1);        // b_i, a_i, s_i
  if (g >= 2) total += static_cast<std::uint64_t>(g) - 1;     // t_0 .. t_{g-2}
  if (g >= 1) total += static_cast<std::uint64_t>(g);         // c_1 .. c_g
  if (g >= 2) total += static_cast<std::uint64_t>(g) - 1;     // d_2 .. d_g

  auto shared = std::make_shared<GameDag>(dag);
  for (int i = 0; i <= g; ++i) {
    const GameDag payload =
        build_dag(disjunctive_sum(dag_game(shared), star_game(i)), meter);
    total += payload.nodes.size();
  }
  return total;
}

std::uint64_t output_size_bound(const GameDag& dag, int g, const Budget& budget) {
  BudgetMeter meter(budget);
  return output_size_bound(dag, g, meter);
}

}  // namespace nimbergeo

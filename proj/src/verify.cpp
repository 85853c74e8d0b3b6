#include "nimbergeo/verify.hpp"

#include <algorithm>
#include <memory>
#include <ostream>

#include "nimbergeo/rng.hpp"

namespace nimbergeo {

std::optional<std::uint32_t> expected_label_value(const std::string& tag,
                                                  std::uint32_t k) {
  if (tag == "start") return k;
  if (tag == "payload") return std::nullopt;

  const std::size_t sep = tag.find('_');
  if (sep != 1 || tag.size() < 3) return std::nullopt;
  const char role = tag[0];
  std::uint32_t i = 0;
  for (std::size_t p = sep + 1; p < tag.size(); ++p) {
    if (tag[p] < '0' || tag[p] > '9') return std::nullopt;
    i = i * 10 + static_cast<std::uint32_t>(tag[p] - '0');
  }

  switch (role) {
    case 'b':  // worth * exactly when the input is worth *i
      return k == i ? 1 : 0;
    case 'a':
      return k == i ? 0 : 1;
    case 's':
      return k == i ? 1 : 0;
    case 't':  // utility vertex worth *i unconditionally
      return i;
    case 'c':  // 0 on the hit index; otherwise * for c_1, *(i-1) beyond
      if (k == i) return 0;
      return i == 1 ? 1 : i - 1;
    case 'd':  // *i below the input's value, *(k-1) at or above it
      if (k == 0) return i;
      return i < k ? i : k - 1;
    default:
      return std::nullopt;
  }
}

GadgetCheck check_gadget_values(const GeoGraph& output, std::uint32_t k) {
  GadgetCheck check;
  const GeoCorePtr core = compile_geo(output);
  if (!core->acyclic()) {
    check.ok = false;
    check.failures.push_back("compiled output is not acyclic");
    return check;
  }
  const std::vector<Nimber> values = geo_static_values(*core);
  check.start_value = values[core->token()].value;

  for (const auto& [vertex, tag] : output.labels) {
    const std::optional<std::uint32_t> expected = expected_label_value(tag, k);
    if (!expected) continue;
    const int idx = core->index_of(vertex);
    if (idx < 0) {
      check.ok = false;
      check.failures.push_back(tag + ": labelled vertex missing from graph");
      continue;
    }
    if (values[idx].value != *expected) {
      check.ok = false;
      check.failures.push_back(vertex + ": expected " + std::to_string(*expected) +
                               ", got " + std::to_string(values[idx].value));
    }
  }
  return check;
}

InstanceReport verify_instance(const GameFile& file, OracleMode mode,
                               const Budget& budget) {
  InstanceReport report;
  report.name = file.name.empty() ? "(unnamed)" : file.name;
  report.ruleset = file.ruleset;
  report.game_json = game_file_to_json(file);

  BudgetMeter meter(budget);
  try {
    const PositionPtr game = game_from_file(file);
    // Input value by the generic memoized solver: a route independent of the
    // static evaluation used on the compiled output.
    report.input_nimber = nimber_of(game, meter).value;

    const auto dag = std::make_shared<GameDag>(build_dag(game, meter));
    report.dag_nodes = dag->nodes.size();
    report.g = grundy_bound(*dag);

    const GeoGraph output = reduce_dag_to_geography(dag, mode, meter);
    report.output_vertices = output.vertices.size();
    report.output_edges = output.edges.size();
    report.size_bound = output_size_bound(*dag, report.g, meter);

    const GadgetCheck check = check_gadget_values(output, report.input_nimber);
    report.output_nimber = check.start_value;
    report.nimber_match = report.output_nimber == report.input_nimber;
    report.gadget_ok = check.ok;
    report.failures = check.failures;
    report.nimber_bound_ok =
        report.input_nimber <= static_cast<std::uint32_t>(report.g);
    report.size_bound_ok = report.output_vertices <= report.size_bound;
    if (!report.nimber_match) {
      report.failures.push_back(
          "start: compiled value " + std::to_string(report.output_nimber) +
          " differs from input value " + std::to_string(report.input_nimber));
    }
    if (!report.nimber_bound_ok) {
      report.failures.push_back("input value exceeds grundy bound " +
                                std::to_string(report.g));
    }
    if (!report.size_bound_ok) {
      report.failures.push_back("output has " + std::to_string(report.output_vertices) +
                                " vertices, bound is " +
                                std::to_string(report.size_bound));
    }
  } catch (const BudgetExceededError& e) {
    report.failures.push_back(std::string("budget: ") + e.what());
  } catch (const std::invalid_argument& e) {
    report.failures.push_back(std::string("error: ") + e.what());
  }
  report.work_nodes = meter.used();
  return report;
}

nlohmann::json InstanceReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["ruleset"] = ruleset;
  j["input_nimber"] = input_nimber;
  j["output_nimber"] = output_nimber;
  j["g"] = g;
  j["dag_nodes"] = dag_nodes;
  j["output_vertices"] = output_vertices;
  j["output_edges"] = output_edges;
  j["size_bound"] = size_bound;
  j["work_nodes"] = work_nodes;
  j["checks"] = {
      {"nimber_match", nimber_match},
      {"gadget_ok", gadget_ok},
      {"nimber_bound_ok", nimber_bound_ok},
      {"size_bound_ok", size_bound_ok},
  };
  j["passed"] = passed();
  j["failures"] = failures;
  j["game"] = game_json;
  return j;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["count"] = count;
  j["mode"] = mode == OracleMode::product ? "product" : "trusted";
  j["caps"] = {
      {"nim_max_piles", caps.nim_max_piles},
      {"nim_max_stones", caps.nim_max_stones},
      {"kayles_max_vertices", caps.kayles_max_vertices},
      {"kayles_edge_prob", caps.kayles_edge_prob},
      {"dag_max_nodes", caps.dag_max_nodes},
      {"dag_edge_prob", caps.dag_edge_prob},
  };
  j["instances"] = nlohmann::json::array();
  for (const InstanceReport& r : instances) j["instances"].push_back(r.to_json());
  j["summary"] = {
      {"passed", passed},
      {"failed", failed},
      {"max_discrepancy", max_discrepancy},
  };
  return j;
}

VerifyReport run_verify(std::uint64_t seed, int count, const VerifyCaps& caps,
                        OracleMode mode, const Budget& per_instance_budget,
                        std::ostream* progress) {
  if (count < 0) throw std::invalid_argument("run_verify: negative count");
  VerifyReport report;
  report.seed = seed;
  report.count = count;
  report.mode = mode;
  report.caps = caps;

  for (int i = 0; i < count; ++i) {
    const std::uint64_t sub_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
    GameFile file;
    switch (i % 3) {
      case 0:
        file = gen_nim(sub_seed, caps.nim_max_piles, caps.nim_max_stones);
        break;
      case 1:
        file = gen_kayles(sub_seed, caps.kayles_max_vertices, caps.kayles_edge_prob);
        break;
      default:
        file = gen_dag(sub_seed, caps.dag_max_nodes, caps.dag_edge_prob);
        break;
    }
    InstanceReport instance = verify_instance(file, mode, per_instance_budget);
    if (instance.passed()) {
      ++report.passed;
    } else {
      ++report.failed;
    }
    report.max_discrepancy = std::max(report.max_discrepancy, instance.discrepancy());
    if (progress) {
      *progress << "[" << (i + 1) << "/" << count << "] " << instance.name << " value "
                << instance.input_nimber << " -> " << instance.output_nimber << " "
                << (instance.passed() ? "ok" : "FAIL") << std::endl;
    }
    report.instances.push_back(std::move(instance));
  }
  return report;
}

}  // namespace nimbergeo

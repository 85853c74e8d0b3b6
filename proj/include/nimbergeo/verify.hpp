#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nimbergeo/budget.hpp"
#include "nimbergeo/gamefile.hpp"
#include "nimbergeo/geography.hpp"
#include "nimbergeo/reduction.hpp"

namespace nimbergeo {

/// Size caps for generated verification corpora.
struct VerifyCaps {
  int nim_max_piles = 4;
  int nim_max_stones = 4;
  int kayles_max_vertices = 7;
  double kayles_edge_prob = 0.35;
  int dag_max_nodes = 60;
  double dag_edge_prob = 0.12;
};

/// Contract value of a labelled compiled-output vertex, given the input
/// game's value k: what the position entered at that vertex must be worth.
/// nullopt for labels without a fixed contract (payload vertices).
std::optional<std::uint32_t> expected_label_value(const std::string& tag,
                                                  std::uint32_t k);

struct GadgetCheck {
  bool ok = true;
  std::uint32_t start_value = 0;
  std::vector<std::string> failures;  // "c_3: expected 2, got 0"
};

/// Statically evaluates every vertex of a compiled output and compares each
/// labelled vertex against its contract.
GadgetCheck check_gadget_values(const GeoGraph& output, std::uint32_t k);

struct InstanceReport {
  std::string name;
  std::string ruleset;
  std::uint32_t input_nimber = 0;
  std::uint32_t output_nimber = 0;
  int g = 0;
  std::uint64_t dag_nodes = 0;
  std::uint64_t output_vertices = 0;
  std::uint64_t output_edges = 0;
  std::uint64_t size_bound = 0;
  std::uint64_t work_nodes = 0;  // deterministic work metric (budget units)
  bool nimber_match = false;
  bool gadget_ok = false;
  bool nimber_bound_ok = false;
  bool size_bound_ok = false;
  std::vector<std::string> failures;
  nlohmann::json game_json;  // replayable input

  bool passed() const {
    return nimber_match && gadget_ok && nimber_bound_ok && size_bound_ok &&
           failures.empty();
  }
  std::uint32_t discrepancy() const {
    return input_nimber ^ output_nimber;  // 0 iff the values agree
  }
  nlohmann::json to_json() const;
};

/// Full round trip for one game: oracle value of the input, compilation in
/// the given mode, static evaluation of the output, and every per-vertex
/// contract plus the value- and size-bound checks.
InstanceReport verify_instance(const GameFile& file, OracleMode mode,
                               const Budget& budget);

struct VerifyReport {
  std::uint64_t seed = 0;
  int count = 0;
  OracleMode mode = OracleMode::product;
  VerifyCaps caps;
  std::vector<InstanceReport> instances;
  int passed = 0;
  int failed = 0;
  std::uint32_t max_discrepancy = 0;

  nlohmann::json to_json() const;
};

/// Runs verify_instance over a generated corpus (round-robin nim / kayles /
/// dag, sub-seeded per index from `seed`). The report is fully deterministic:
/// identical (seed, count, caps, mode) give byte-identical JSON. Optional
/// progress lines go to `progress` (not part of the report).
VerifyReport run_verify(std::uint64_t seed, int count, const VerifyCaps& caps,
                        OracleMode mode, const Budget& per_instance_budget,
                        std::ostream* progress = nullptr);

}  // namespace nimbergeo

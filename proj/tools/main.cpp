#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nimbergeo/gamefile.hpp"
#include "nimbergeo/geography.hpp"
#include "nimbergeo/primality.hpp"
#include "nimbergeo/reduction.hpp"
#include "nimbergeo/rulesets.hpp"
#include "nimbergeo/verify.hpp"

namespace {

using namespace nimbergeo;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

struct BudgetFlags {
  std::uint64_t nodes = 500'000;
  double seconds = 30.0;
  CLI::Option* nodes_opt = nullptr;

  void attach(CLI::App* cmd) {
    nodes_opt = cmd->add_option("--budget-nodes", nodes,
                                "node budget for evaluation and compilation");
    cmd->add_option("--budget-seconds", seconds, "wall-time budget in seconds");
  }

  Budget get() const {
    if (seconds <= 0) throw ParseError("--budget-seconds must be positive");
    Budget b;
    b.max_nodes = nodes;
    b.max_time = std::chrono::milliseconds(static_cast<std::int64_t>(
        std::llround(seconds * 1000.0)));
    return b;
  }
};

OracleMode parse_mode(const std::string& mode) {
  if (mode == "product") return OracleMode::product;
  if (mode == "trusted") return OracleMode::trusted;
  throw ParseError("--mode must be product or trusted");
}

/// Shared tail of reduce and encode-xor: compile, report counts on stderr,
/// emit the instance as a geography game file (and optionally DOT).
int emit_reduction(const PositionPtr& game, OracleMode mode, const Budget& budget,
                   const std::string& out_path, const std::string& dot_path,
                   const std::string& format) {
  BudgetMeter meter(budget);
  const auto dag = std::make_shared<GameDag>(build_dag(game, meter));
  const int g = grundy_bound(*dag);
  const GeoGraph output = reduce_dag_to_geography(dag, mode, meter);
  const std::uint64_t bound = output_size_bound(*dag, g, meter);

  std::cerr << "vertices=" << output.vertices.size() << " edges=" << output.edges.size()
            << " g=" << g << " size_bound=" << bound << " work_nodes=" << meter.used()
            << "\n";

  GameFile out_file;
  out_file.ruleset = "geography";
  out_file.geo = output;
  if (format == "dot") {
    write_output(out_path, export_geo_dot(output));
  } else {
    write_output(out_path, serialize_game_file(out_file));
  }
  if (!dot_path.empty()) {
    std::ofstream dot(dot_path, std::ios::binary);
    if (!dot) throw ParseError("cannot write file: " + dot_path);
    dot << export_geo_dot(output);
  }
  return 0;
}

std::string notion_name(DegreeNotion notion) {
  return notion == DegreeNotion::total_degree ? "total_degree" : "max_in_out";
}

void print_sweep(const SweepReport& report) {
  std::cout << "notion=" << notion_name(report.notion)
            << " max_vertices=" << report.max_vertices;
  if (report.degree_bound) {
    std::cout << " degree_bound=" << *report.degree_bound;
  } else {
    std::cout << " degree_bound=none";
  }
  std::cout << " max_nimber=" << report.max_nimber
            << " graphs=" << report.graphs_enumerated
            << " within_bound=" << report.graphs_within_bound
            << " positions=" << report.positions_evaluated << "\n";
  std::cout << "witness=" << geo_to_json(report.witness).dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"impartial games: values, geography compilation, xor encoding, primality"};
  app.require_subcommand(1);

  // nimber
  auto* cmd_nimber = app.add_subcommand("nimber", "game value of a game file");
  std::string nimber_input;
  cmd_nimber->add_option("input", nimber_input, "game file (- for stdin)")->required();
  BudgetFlags nimber_budget;
  nimber_budget.attach(cmd_nimber);

  // reduce
  auto* cmd_reduce =
      app.add_subcommand("reduce", "compile a game into one geography instance");
  std::string reduce_input, reduce_mode = "product", reduce_out, reduce_dot;
  std::string reduce_format = "json";
  cmd_reduce->add_option("input", reduce_input, "game file (- for stdin)")->required();
  cmd_reduce->add_option("--mode", reduce_mode, "product|trusted");
  cmd_reduce->add_option("--out", reduce_out, "write the instance here (default stdout)");
  cmd_reduce->add_option("--dot", reduce_dot, "also write a DOT rendering here");
  cmd_reduce->add_option("--format", reduce_format, "stdout format: json|dot");
  BudgetFlags reduce_budget;
  reduce_budget.attach(cmd_reduce);

  // encode-xor
  auto* cmd_xor = app.add_subcommand(
      "encode-xor", "compile two games into one instance worth their xor");
  std::string xor_a, xor_b, xor_mode = "product", xor_out, xor_dot, xor_format = "json";
  cmd_xor->add_option("a", xor_a, "first game file")->required();
  cmd_xor->add_option("b", xor_b, "second game file")->required();
  cmd_xor->add_option("--mode", xor_mode, "product|trusted");
  cmd_xor->add_option("--out", xor_out, "write the instance here (default stdout)");
  cmd_xor->add_option("--dot", xor_dot, "also write a DOT rendering here");
  cmd_xor->add_option("--format", xor_format, "stdout format: json|dot");
  BudgetFlags xor_budget;
  xor_budget.attach(cmd_xor);

  // sum
  auto* cmd_sum = app.add_subcommand("sum", "disjunctive sum of two game files");
  std::string sum_a, sum_b, sum_out;
  cmd_sum->add_option("a", sum_a, "first game file")->required();
  cmd_sum->add_option("b", sum_b, "second game file")->required();
  cmd_sum->add_option("--out", sum_out, "write the sum here (default stdout)");

  // verify
  auto* cmd_verify = app.add_subcommand(
      "verify", "compile a generated corpus and check every output contract");
  std::uint64_t verify_seed = 1;
  int verify_count = 30;
  std::string verify_mode = "product", verify_out, verify_dump_dir;
  VerifyCaps caps;
  cmd_verify->add_option("--seed", verify_seed, "corpus seed");
  cmd_verify->add_option("--count", verify_count, "number of instances");
  cmd_verify->add_option("--mode", verify_mode, "product|trusted");
  cmd_verify->add_option("--out", verify_out, "write the JSON report here");
  cmd_verify->add_option("--dump-dir", verify_dump_dir,
                         "write failing instances here as replayable game files");
  cmd_verify->add_option("--nim-max-piles", caps.nim_max_piles);
  cmd_verify->add_option("--nim-max-stones", caps.nim_max_stones);
  cmd_verify->add_option("--kayles-max-vertices", caps.kayles_max_vertices);
  cmd_verify->add_option("--kayles-edge-prob", caps.kayles_edge_prob);
  cmd_verify->add_option("--dag-max-nodes", caps.dag_max_nodes);
  cmd_verify->add_option("--dag-edge-prob", caps.dag_edge_prob);
  BudgetFlags verify_budget;
  verify_budget.attach(cmd_verify);

  // prime-check
  auto* cmd_prime = app.add_subcommand(
      "prime-check", "decide whether a game is a sum of two smaller games");
  std::string prime_input;
  cmd_prime->add_option("input", prime_input, "game file (- for stdin)")->required();
  BudgetFlags prime_budget;
  prime_budget.attach(cmd_prime);

  // gen
  auto* cmd_gen = app.add_subcommand("gen", "generate a seeded game file");
  std::string gen_ruleset;
  std::uint64_t gen_seed = 1;
  int gen_piles = 3, gen_max_stones = 4, gen_vertices = 6, gen_nodes = 30;
  double gen_edge_prob = -1.0;
  std::string gen_out;
  cmd_gen->add_option("ruleset", gen_ruleset, "nim|kayles|dag")->required();
  cmd_gen->add_option("--seed", gen_seed, "generator seed");
  cmd_gen->add_option("--piles", gen_piles, "nim: maximum pile count");
  cmd_gen->add_option("--max-stones", gen_max_stones, "nim: maximum stones per pile");
  cmd_gen->add_option("--vertices", gen_vertices, "kayles: maximum vertex count");
  cmd_gen->add_option("--nodes", gen_nodes, "dag: maximum node count");
  cmd_gen->add_option("--edge-prob", gen_edge_prob,
                      "edge probability (default 0.35 kayles, 0.12 dag)");
  cmd_gen->add_option("--out", gen_out, "write the game here (default stdout)");

  // sweep
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "exhaustive small-graph search for the largest game value");
  int sweep_max_vertices = 4;
  int sweep_degree_bound = -1;
  std::string sweep_notion = "both";
  cmd_sweep->add_option("--max-vertices", sweep_max_vertices, "vertex count limit (<= 6)");
  cmd_sweep->add_option("--degree-bound", sweep_degree_bound,
                        "per-vertex degree cap (omit for unbounded)");
  cmd_sweep->add_option("--notion", sweep_notion,
                        "degree notion: total|max-in-out|both");
  BudgetFlags sweep_budget;
  sweep_budget.attach(cmd_sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_nimber)) {
      const GameFile file = parse_game_file(read_input(nimber_input));
      const Nimber value = nimber_of(game_from_file(file), nimber_budget.get());
      std::cout << value.value << "\n";
      return 0;
    }

    if (app.got_subcommand(cmd_reduce)) {
      if (reduce_format != "json" && reduce_format != "dot") {
        throw ParseError("--format must be json or dot");
      }
      const GameFile file = parse_game_file(read_input(reduce_input));
      return emit_reduction(game_from_file(file), parse_mode(reduce_mode),
                            reduce_budget.get(), reduce_out, reduce_dot, reduce_format);
    }

    if (app.got_subcommand(cmd_xor)) {
      if (xor_format != "json" && xor_format != "dot") {
        throw ParseError("--format must be json or dot");
      }
      const GameFile a = parse_game_file(read_input(xor_a));
      const GameFile b = parse_game_file(read_input(xor_b));
      const PositionPtr sum = disjunctive_sum(game_from_file(a), game_from_file(b));
      return emit_reduction(sum, parse_mode(xor_mode), xor_budget.get(), xor_out,
                            xor_dot, xor_format);
    }

    if (app.got_subcommand(cmd_sum)) {
      GameFile out;
      out.ruleset = "sum";
      out.parts.push_back(parse_game_file(read_input(sum_a)));
      out.parts.push_back(parse_game_file(read_input(sum_b)));
      write_output(sum_out, serialize_game_file(out));
      return 0;
    }

    if (app.got_subcommand(cmd_verify)) {
      const VerifyReport report =
          run_verify(verify_seed, verify_count, caps, parse_mode(verify_mode),
                     verify_budget.get(), &std::cerr);
      write_output(verify_out, report.to_json().dump(2));
      if (!verify_dump_dir.empty()) {
        for (std::size_t i = 0; i < report.instances.size(); ++i) {
          const InstanceReport& instance = report.instances[i];
          if (instance.passed()) continue;
          char name[32];
          std::snprintf(name, sizeof name, "verify-fail-%04zu.json", i);
          const std::string path = verify_dump_dir + "/" + name;
          write_output(path, instance.game_json.dump(2));
          std::cerr << "dumped failing instance to " << path << "\n";
        }
      }
      return report.failed == 0 ? 0 : 1;
    }

    if (app.got_subcommand(cmd_prime)) {
      const GameFile file = parse_game_file(read_input(prime_input));
      const PrimeVerdict verdict =
          is_prime_game(game_from_file(file), prime_budget.get());
      nlohmann::json j;
      j["tree_nodes"] = verdict.tree_nodes;
      if (verdict.kind == PrimeKind::prime) {
        j["verdict"] = "prime";
      } else if (verdict.kind == PrimeKind::composite) {
        j["verdict"] = "composite";
        const auto& [a, b] = *verdict.witness;
        j["witness"] = {
            {"factor_a_nodes", a.size()},
            {"factor_b_nodes", b.size()},
            {"factor_a_height", tree_height(a)},
            {"factor_b_height", tree_height(b)},
        };
      } else {
        j["verdict"] = "budget-exceeded";
      }
      std::cout << j.dump(2) << "\n";
      return verdict.kind == PrimeKind::budget_exceeded ? 3 : 0;
    }

    if (app.got_subcommand(cmd_gen)) {
      GameFile file;
      if (gen_ruleset == "nim") {
        file = gen_nim(gen_seed, gen_piles, gen_max_stones);
      } else if (gen_ruleset == "kayles") {
        file = gen_kayles(gen_seed, gen_vertices,
                          gen_edge_prob < 0 ? 0.35 : gen_edge_prob);
      } else if (gen_ruleset == "dag") {
        file = gen_dag(gen_seed, gen_nodes, gen_edge_prob < 0 ? 0.12 : gen_edge_prob);
      } else {
        throw ParseError("gen ruleset must be nim, kayles, or dag");
      }
      write_output(gen_out, serialize_game_file(file));
      return 0;
    }

    if (app.got_subcommand(cmd_sweep)) {
      // Exhaustive enumeration wants headroom: bump the default node budget,
      // but honor an explicit --budget-nodes.
      if (sweep_notion != "total" && sweep_notion != "max-in-out" &&
          sweep_notion != "both") {
        throw ParseError("--notion must be total, max-in-out, or both");
      }
      BudgetFlags flags = sweep_budget;
      if (flags.nodes_opt && flags.nodes_opt->count() == 0) flags.nodes = 16'777'216;
      const std::optional<int> bound =
          sweep_degree_bound < 0 ? std::nullopt : std::optional<int>(sweep_degree_bound);
      if (sweep_notion == "total" || sweep_notion == "both") {
        print_sweep(max_nimber_sweep(sweep_max_vertices, bound,
                                     DegreeNotion::total_degree, flags.get()));
      }
      if (sweep_notion == "max-in-out" || sweep_notion == "both") {
        print_sweep(max_nimber_sweep(sweep_max_vertices, bound,
                                     DegreeNotion::max_in_out, flags.get()));
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

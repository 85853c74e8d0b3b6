#include <doctest.h>

#include <string>

#include "helpers.hpp"

using testutil::TempDir;
using testutil::read_file;
using testutil::run_cli;
using testutil::write_file;

TEST_CASE("cli computes values from files and stdin") {
  TempDir dir;
  write_file(dir.file("g.json"), R"({"ruleset":"nim","piles":[1,2]})");
  const auto r = run_cli("nimber " + dir.file("g.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "3\n");

  const auto piped =
      run_cli("nimber - < " + dir.file("g.json"));
  CHECK(piped.exit_code == 0);
  CHECK(piped.out == "3\n");
}

TEST_CASE("cli reduce output is itself a playable game file") {
  TempDir dir;
  write_file(dir.file("g.json"), R"({"ruleset":"nim","piles":[1,2]})");
  const auto reduce =
      run_cli("reduce " + dir.file("g.json") + " --out " + dir.file("out.json"));
  CHECK(reduce.exit_code == 0);

  const auto value = run_cli("nimber " + dir.file("out.json"));
  CHECK(value.exit_code == 0);
  CHECK(value.out == "3\n");
}

TEST_CASE("cli encode-xor compiles the xor of two games") {
  TempDir dir;
  write_file(dir.file("a.json"), R"({"ruleset":"star","k":1})");
  write_file(dir.file("b.json"), R"({"ruleset":"star","k":2})");
  const auto enc = run_cli("encode-xor " + dir.file("a.json") + " " +
                           dir.file("b.json") + " --mode trusted --out " +
                           dir.file("x.json"));
  CHECK(enc.exit_code == 0);
  const auto value = run_cli("nimber " + dir.file("x.json"));
  CHECK(value.out == "3\n");
}

TEST_CASE("cli sum builds a playable sum file") {
  TempDir dir;
  write_file(dir.file("a.json"), R"({"ruleset":"star","k":2})");
  write_file(dir.file("b.json"), R"({"ruleset":"star","k":3})");
  const auto sum = run_cli("sum " + dir.file("a.json") + " " + dir.file("b.json") +
                           " --out " + dir.file("s.json"));
  CHECK(sum.exit_code == 0);
  const auto value = run_cli("nimber " + dir.file("s.json"));
  CHECK(value.out == "1\n");
}

TEST_CASE("cli rejects bad input with exit 2") {
  TempDir dir;
  write_file(dir.file("bad.json"), "not json at all");
  CHECK(run_cli("nimber " + dir.file("bad.json")).exit_code == 2);
  CHECK(run_cli("nimber " + dir.file("missing.json")).exit_code == 2);
  write_file(dir.file("rules.json"), R"({"ruleset":"chess"})");
  CHECK(run_cli("reduce " + dir.file("rules.json")).exit_code == 2);
  CHECK(run_cli("totally-unknown-subcommand").exit_code == 2);
}

TEST_CASE("cli reports exhausted budgets with exit 3") {
  TempDir dir;
  write_file(dir.file("g.json"), R"({"ruleset":"nim","piles":[4,4,4]})");
  CHECK(run_cli("nimber " + dir.file("g.json") + " --budget-nodes 5").exit_code == 3);
  CHECK(run_cli("reduce " + dir.file("g.json") + " --budget-nodes 5").exit_code == 3);
  write_file(dir.file("p.json"), R"({"ruleset":"nim","piles":[3,3,3]})");
  CHECK(run_cli("prime-check " + dir.file("p.json") + " --budget-nodes 10").exit_code ==
        3);
}

TEST_CASE("cli gen is deterministic and replayable") {
  TempDir dir;
  const auto a = run_cli("gen dag --seed 17 --nodes 15");
  const auto b = run_cli("gen dag --seed 17 --nodes 15");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != run_cli("gen dag --seed 18 --nodes 15").out);

  write_file(dir.file("gen.json"), a.out);
  CHECK(run_cli("nimber " + dir.file("gen.json")).exit_code == 0);
}

TEST_CASE("cli writes dot renderings") {
  TempDir dir;
  write_file(dir.file("g.json"), R"({"ruleset":"star","k":1})");
  const auto r = run_cli("reduce " + dir.file("g.json") + " --out " +
                         dir.file("out.json") + " --dot " + dir.file("out.dot"));
  CHECK(r.exit_code == 0);
  const auto dot = read_file(dir.file("out.dot"));
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("doublecircle") != std::string::npos);

  const auto direct = run_cli("reduce " + dir.file("g.json") + " --format dot");
  CHECK(direct.exit_code == 0);
  CHECK(direct.out.find("digraph") == 0);
}

TEST_CASE("cli prime-check reports verdicts as json") {
  TempDir dir;
  write_file(dir.file("p.json"), R"({"ruleset":"star","k":3})");
  const auto prime = run_cli("prime-check " + dir.file("p.json"));
  CHECK(prime.exit_code == 0);
  CHECK(prime.out.find("\"prime\"") != std::string::npos);

  write_file(dir.file("c.json"), R"({"ruleset":"nim","piles":[1,1]})");
  const auto comp = run_cli("prime-check " + dir.file("c.json"));
  CHECK(comp.exit_code == 0);
  CHECK(comp.out.find("\"composite\"") != std::string::npos);
  CHECK(comp.out.find("witness") != std::string::npos);
}

TEST_CASE("cli verify exits clean and writes identical reports per seed") {
  TempDir dir;
  const std::string caps =
      " --nim-max-piles 3 --nim-max-stones 3 --kayles-max-vertices 4"
      " --dag-max-nodes 10";
  const auto a = run_cli("verify --seed 3 --count 6 --out " + dir.file("a.json") + caps);
  const auto b = run_cli("verify --seed 3 --count 6 --out " + dir.file("b.json") + caps);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(read_file(dir.file("a.json")) == read_file(dir.file("b.json")));
}

TEST_CASE("cli single-pile values print in decimal") {
  TempDir dir;
  write_file(dir.file("s.json"), R"({"ruleset":"star","k":6})");
  const auto r = run_cli("nimber " + dir.file("s.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "6\n");
}

TEST_CASE("cli verify with an empty corpus passes vacuously") {
  TempDir dir;
  const auto r = run_cli("verify --count 0 --out " + dir.file("r.json"));
  CHECK(r.exit_code == 0);
  CHECK(read_file(dir.file("r.json")).find("\"passed\": 0") != std::string::npos);
}

TEST_CASE("cli compiled outputs are prime games") {
  TempDir dir;
  write_file(dir.file("g.json"), R"({"ruleset":"nim","piles":[1,1]})");
  const auto reduce = run_cli("reduce " + dir.file("g.json") + " --mode trusted" +
                              " --out " + dir.file("out.json"));
  CHECK(reduce.exit_code == 0);
  const auto prime = run_cli("prime-check " + dir.file("out.json"));
  CHECK(prime.exit_code == 0);
  CHECK(prime.out.find("\"prime\"") != std::string::npos);
}

TEST_CASE("cli sweep prints the frozen small-graph maxima") {
  const auto r = run_cli("sweep --max-vertices 3 --notion total");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("max_nimber=2") != std::string::npos);
  CHECK(r.out.find("witness=") != std::string::npos);
}

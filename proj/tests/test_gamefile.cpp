#include <doctest.h>

#include <string>

#include "nimbergeo/budget.hpp"
#include "nimbergeo/errors.hpp"
#include "nimbergeo/game.hpp"
#include "nimbergeo/gamefile.hpp"

using namespace nimbergeo;

namespace {

std::uint32_t value_of(const std::string& text) {
  return nimber_of(game_from_file(parse_game_file(text)), Budget::unlimited()).value;
}

}  // namespace

TEST_CASE("nim files parse and play") {
  CHECK(value_of(R"({"ruleset":"nim","piles":[1,2]})") == 3);
  CHECK(value_of(R"({"ruleset":"nim","piles":[]})") == 0);
  CHECK(value_of(R"({"ruleset":"star","k":4})") == 4);
}

TEST_CASE("kayles files parse and play") {
  CHECK(value_of(R"({"ruleset":"kayles",
                     "vertices":["a","b","c"],
                     "edges":[["a","b"],["b","c"]]})") == 2);
}

TEST_CASE("dag files parse and play") {
  CHECK(value_of(R"({"ruleset":"dag",
                     "start":"r",
                     "nodes":{"r":["a","b"],"a":["t"],"b":["t"],"t":[]}})") == 0);
}

TEST_CASE("geography files parse in both variants") {
  CHECK(value_of(R"({"ruleset":"geography",
                     "vertices":["a","b"],
                     "edges":[["a","b"],["b","a"]],
                     "token":"a"})") == 1);
  CHECK(value_of(R"({"ruleset":"edge-geography",
                     "vertices":["a","b"],
                     "edges":[["a","b"],["b","a"]],
                     "token":"a"})") == 0);
}

TEST_CASE("sums nest") {
  CHECK(value_of(R"({"ruleset":"sum","games":[
                       {"ruleset":"nim","piles":[2]},
                       {"ruleset":"star","k":3}]})") == 1);
  CHECK(value_of(R"({"ruleset":"sum","games":[
                       {"ruleset":"sum","games":[
                          {"ruleset":"star","k":1},
                          {"ruleset":"star","k":2}]},
                       {"ruleset":"star","k":3}]})") == 0);
}

TEST_CASE("parse failures carry a reason") {
  CHECK_THROWS_AS(parse_game_file("not json"), ParseError);
  CHECK_THROWS_AS(parse_game_file("[]"), ParseError);
  CHECK_THROWS_AS(parse_game_file(R"({"piles":[1]})"), ParseError);
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"chess"})"), ParseError);
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"nim","piles":"two"})"), ParseError);
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"nim","piles":[-1]})"), ParseError);
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"nim","piles":[2000000]})"), ParseError);
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"star"})"), ParseError);
  CHECK_THROWS_AS(
      parse_game_file(R"({"ruleset":"kayles","vertices":["a"],"edges":[["a"]]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_game_file(R"({"ruleset":"kayles","vertices":["a","a"],"edges":[]})"),
      ParseError);
  // dag with an unknown child
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"dag","start":"r",
                                      "nodes":{"r":["x"]}})"),
                  ParseError);
  // dag with a cycle
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"dag","start":"a",
                                      "nodes":{"a":["b"],"b":["a"]}})"),
                  ParseError);
  // dag whose start is missing
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"dag","start":"z",
                                      "nodes":{"a":[]}})"),
                  ParseError);
  // geography without vertices
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"geography","vertices":[],
                                      "edges":[],"token":""})"),
                  ParseError);
  // sums need exactly two parts
  CHECK_THROWS_AS(parse_game_file(R"({"ruleset":"sum","games":[
                                        {"ruleset":"star","k":1}]})"),
                  ParseError);
}

TEST_CASE("round trips preserve every ruleset") {
  const char* files[] = {
      R"({"ruleset":"nim","piles":[3,1]})",
      R"({"ruleset":"star","k":2})",
      R"({"ruleset":"kayles","vertices":["a","b"],"edges":[["a","b"]]})",
      R"({"ruleset":"dag","start":"r","nodes":{"r":["t"],"t":[]}})",
      R"({"ruleset":"geography","vertices":["a"],"edges":[],"token":"a"})",
      R"({"ruleset":"sum","games":[{"ruleset":"star","k":1},
                                   {"ruleset":"star","k":2}]})",
  };
  for (const char* text : files) {
    const auto file = parse_game_file(text);
    const auto again = parse_game_file(serialize_game_file(file));
    CHECK(file == again);
  }
}

TEST_CASE("serialization is stable for generated files") {
  const auto file = gen_dag(11, 20, 0.2);
  const auto text = serialize_game_file(file);
  CHECK(text == serialize_game_file(parse_game_file(text)));
}

TEST_CASE("generators are deterministic per seed") {
  CHECK(gen_nim(5, 4, 6) == gen_nim(5, 4, 6));
  CHECK(gen_kayles(5, 6, 0.3) == gen_kayles(5, 6, 0.3));
  CHECK(gen_dag(5, 25, 0.15) == gen_dag(5, 25, 0.15));
  CHECK(gen_nim(5, 4, 6) != gen_nim(6, 4, 6));
  CHECK(gen_dag(5, 25, 0.15) != gen_dag(7, 25, 0.15));
}

TEST_CASE("generated games always parse and play") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (const auto& file :
         {gen_nim(seed, 4, 5), gen_kayles(seed, 6, 0.4), gen_dag(seed, 30, 0.15)}) {
      const auto again = parse_game_file(serialize_game_file(file));
      CHECK(file == again);
      nimber_of(game_from_file(again), Budget::unlimited());  // must not throw
    }
  }
}

TEST_CASE("generated dags stay within their caps") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto file = gen_dag(seed, 12, 0.2);
    REQUIRE_FALSE(file.dag.nodes.empty());
    CHECK(file.dag.nodes.size() <= 12);
    const auto kayles = gen_kayles(seed, 5, 0.5);
    CHECK(kayles.kayles_vertices.size() <= 5);
  }
}

TEST_CASE("names carry the seed") {
  CHECK(gen_nim(42, 3, 4).name == "nim-42");
  CHECK(gen_kayles(42, 5, 0.3).name == "kayles-42");
  CHECK(gen_dag(42, 10, 0.2).name == "dag-42");
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nimbergeo/dag.hpp"
#include "nimbergeo/game.hpp"
#include "nimbergeo/geography.hpp"

namespace nimbergeo {

/// One game as stored on disk. `ruleset` selects which payload fields carry
/// the game; the rest stay default. Parsing validates the payload fully, so a
/// GameFile in hand is always playable.
///
/// Rulesets: nim (piles), star (k), kayles (vertices + edges),
/// dag (start + nodes), geography / edge-geography (vertices, edges, token,
/// labels), sum (exactly two sub-games).
struct GameFile {
  std::string ruleset;
  std::string name;                    // optional display name
  std::optional<std::uint64_t> seed;   // provenance of generated files

  std::vector<int> nim_piles;
  int star_k = 0;
  std::vector<std::string> kayles_vertices;
  std::vector<std::pair<std::string, std::string>> kayles_edges;
  GameDag dag;
  GeoGraph geo;
  std::vector<GameFile> parts;         // sum components

  friend bool operator==(const GameFile&, const GameFile&) = default;
};

GameFile game_file_from_json(const nlohmann::json& j);
nlohmann::json game_file_to_json(const GameFile& f);

/// Throws ParseError on malformed JSON or invalid payloads.
GameFile parse_game_file(const std::string& text);
std::string serialize_game_file(const GameFile& f);

/// Builds the playable position the file describes.
PositionPtr game_from_file(const GameFile& f);

/// Deterministic instance generators: the same (seed, parameters) always
/// produce the same file, on every platform. Pile counts, vertex counts and
/// node counts are drawn from [1, max]; stones from [0, max_stones]; edges by
/// independent coin flips.
GameFile gen_nim(std::uint64_t seed, int max_piles, int max_stones);
GameFile gen_kayles(std::uint64_t seed, int max_vertices, double edge_prob);
GameFile gen_dag(std::uint64_t seed, int max_nodes, double edge_prob);

}  // namespace nimbergeo

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nimbergeo/dag.hpp"
#include "nimbergeo/game.hpp"

namespace nimbergeo {

/// A Generalized Geography instance: directed graph plus token vertex.
/// Vertices and edges are kept sorted, so equal instances compare equal and
/// serialize identically. `labels` optionally tags vertices with their role
/// (used by compiled outputs and by the DOT export); it never affects play.
struct GeoGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string token;
  std::map<std::string, std::string> labels;

  friend bool operator==(const GeoGraph&, const GeoGraph&) = default;
};

/// Validates and canonicalizes an instance: sorts vertices and edges, rejects
/// duplicate vertices/edges, self-loops, unknown edge endpoints, unknown
/// token, and labels on unknown vertices. The empty graph with empty token is
/// allowed as a degenerate fragment (it cannot be played).
GeoGraph make_geo(std::vector<std::string> vertices,
                  std::vector<std::pair<std::string, std::string>> edges,
                  std::string token,
                  std::map<std::string, std::string> labels = {});

/// Vertex-deletion moves: sliding the token from v along (v,w) removes v and
/// every edge incident to it. Returns the successor instances in order of
/// their target vertex.
std::vector<GeoGraph> geo_options(const GeoGraph& g);

/// Edge-deletion moves: sliding the token along (v,w) removes only that edge.
std::vector<GeoGraph> edge_geo_options(const GeoGraph& g);

/// Indexed, immutable form of a GeoGraph shared by all positions during
/// evaluation. Computes adjacency, the topological order (when acyclic), and
/// a content fingerprint over vertices+edges (token excluded, so all
/// positions of one graph share it).
class GeoCore {
 public:
  explicit GeoCore(const GeoGraph& g);

  int vertex_count() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // -1 when absent
  const std::vector<std::vector<int>>& out() const { return out_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& out_edge_ids() const { return out_edge_ids_; }
  int token() const { return token_; }
  bool acyclic() const { return acyclic_; }
  /// Sources-first topological order; empty when the graph is cyclic.
  const std::vector<int>& topo() const { return topo_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> out_edge_ids_;
  int token_ = -1;
  bool acyclic_ = false;
  std::vector<int> topo_;
  std::uint64_t fingerprint_ = 0;
};

using GeoCorePtr = std::shared_ptr<const GeoCore>;
GeoCorePtr compile_geo(const GeoGraph& g);

/// Value of "token at v" for every vertex v of an acyclic instance, in one
/// reverse-topological sweep. On a DAG no deleted vertex or edge is ever
/// reachable again, so deletions are irrelevant and this matches full play
/// for both move variants. Throws std::invalid_argument on cyclic input.
std::vector<Nimber> geo_static_values(const GeoCore& core);

/// Game value of the instance. Acyclic graphs are answered by the static
/// sweep (charging one unit per vertex); cyclic ones fall back to the general
/// memoized solver over (remaining set, token) states.
Nimber geo_nimber(const GeoGraph& g, BudgetMeter& meter);
Nimber geo_nimber(const GeoGraph& g, const Budget& budget);
Nimber edge_geo_nimber(const GeoGraph& g, BudgetMeter& meter);
Nimber edge_geo_nimber(const GeoGraph& g, const Budget& budget);

/// Position views for the generic machinery (sums, tree expansion, primality).
PositionPtr vertex_geo_position(const GeoGraph& g);
PositionPtr edge_geo_position(const GeoGraph& g);

/// Embeds a game DAG as an acyclic geography instance with identical values:
/// one vertex per node (named by zero-padded node index), one edge per
/// distinct child, token at the start node. Rejects cyclic input.
GeoGraph dag_as_geography(const GameDag& dag);

nlohmann::json geo_to_json(const GeoGraph& g);
GeoGraph geo_from_json(const nlohmann::json& j);
std::string export_geo_json(const GeoGraph& g);
GeoGraph import_geo_json(const std::string& text);

/// Graphviz rendering; vertices are colored by their label's role prefix and
/// the token is drawn with a double border.
std::string export_geo_dot(const GeoGraph& g);

enum class DegreeNotion {
  total_degree,  // in-degree + out-degree
  max_in_out,    // max(in-degree, out-degree)
};

struct SweepReport {
  int max_vertices = 0;
  std::optional<int> degree_bound;
  DegreeNotion notion = DegreeNotion::total_degree;
  int max_nimber = -1;
  GeoGraph witness;  // first instance attaining max_nimber
  std::uint64_t graphs_enumerated = 0;
  std::uint64_t graphs_within_bound = 0;
  std::uint64_t positions_evaluated = 0;
};

/// Exhaustively enumerates every simple directed graph on 1..max_vertices
/// labelled vertices (optionally only those within a per-vertex degree bound)
/// and every token placement, and reports the largest vertex-variant game
/// value seen. One budget unit per enumerated graph.
SweepReport max_nimber_sweep(int max_vertices, std::optional<int> degree_bound,
                             DegreeNotion notion, BudgetMeter& meter);
SweepReport max_nimber_sweep(int max_vertices, std::optional<int> degree_bound,
                             DegreeNotion notion, const Budget& budget);

}  // namespace nimbergeo

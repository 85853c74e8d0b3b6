#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "nimbergeo/dag.hpp"
#include "nimbergeo/game.hpp"
#include "nimbergeo/geography.hpp"

namespace nimbergeo {

/// How each "is the input worth *i" sub-question is answered inside the
/// compiled output.
///   product: self-contained — the question is embedded as the game sum
///            input + *i, laid out as an acyclic geography payload whose
///            start is worth 0 exactly when the input is worth *i.
///   trusted: the question is answered up front by evaluating the input, and
///            only the answer's shape (a leaf or a two-vertex chain) is
///            emitted. Far smaller output, but its correctness leans on the
///            evaluator instead of being checkable from the output alone.
enum class OracleMode { product, trusted };

/// A geography fragment plus the vertex through which it is meant to be
/// entered. The fragment's token is set to the entry so it is also playable
/// on its own.
struct GadgetBundle {
  GeoGraph geo;
  std::string entry;
};

/// Upper bound on the game's value: min(tree height, number of start
/// options). Option count is taken before any merging of equal options, so
/// the bound stays valid for the unfolded tree.
int grundy_bound(const GameDag& dag);

/// Utility vertices t_0 .. t_{g-2} where the position entered at t_j is worth
/// exactly *j: each t_j points to every t_l with l < j. Empty for g < 2.
GadgetBundle build_t_chain(int g);

/// The question gadget for index i: chain b_i -> a_i -> s_i, where the
/// position at s_i is worth * when the input is worth *i and 0 otherwise, so
/// b_i is worth * exactly when the input is worth *i. In product mode s_i
/// points at the embedded input+*i payload; in trusted mode s_i is a leaf or
/// points at one. Entry vertex: b_i.
GadgetBundle build_qi_gadget(const std::shared_ptr<const GameDag>& dag, int i,
                             OracleMode mode, BudgetMeter& meter);

/// Compiles the game into one Generalized Geography instance whose start
/// position has the same value as the game. Output vertices carry role
/// labels; the token sits on "start".
GeoGraph reduce_dag_to_geography(const std::shared_ptr<const GameDag>& dag,
                                 OracleMode mode, BudgetMeter& meter);
GeoGraph reduce_to_geography(const PositionPtr& game, OracleMode mode,
                             BudgetMeter& meter);
GeoGraph reduce_to_geography(const PositionPtr& game, OracleMode mode,
                             const Budget& budget);

/// Homomorphic xor: one geography instance worth nimber(a) xor nimber(b),
/// built by compiling the disjunctive sum of the two games.
GeoGraph encode_xor(const PositionPtr& a, const PositionPtr& b, OracleMode mode,
                    BudgetMeter& meter);
GeoGraph encode_xor(const PositionPtr& a, const PositionPtr& b, OracleMode mode,
                    const Budget& budget);

/// Vertex count of the product-mode output for this dag and bound g:
/// start + 3 question chains per index + the embedded payloads + the t/c/d
/// wiring. Product mode meets it exactly; trusted mode stays below it.
/// Rebuilds the payload DAGs itself, so it is an independent route to the
/// count rather than a readback of reduce's bookkeeping.
std::uint64_t output_size_bound(const GameDag& dag, int g, BudgetMeter& meter);
std::uint64_t output_size_bound(const GameDag& dag, int g, const Budget& budget);

}  // namespace nimbergeo

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rgbp/core.hpp"

namespace rgbp {

// Vertex cover on a cubic graph given with a Hamiltonian cycle. The cycle may
// be empty for sources that do not need one (gen_h13d4).
struct HcvcInput {
  Graph graph;
  std::vector<VertexId> cycle;  // Hamiltonian order; empty = not provided
  int p = 0;

  void validate(bool require_cycle) const;
};

struct Sat22Clause {
  std::array<int, 3> var;        // 0-based variable indices, pairwise distinct
  std::array<bool, 3> positive;  // literal signs
};

// (2,2)-3-CNF: every variable occurs exactly twice positively and twice
// negatively; 3M = 4N.
struct Sat22Input {
  int num_variables = 0;
  std::vector<Sat22Clause> clauses;

  void validate() const;
};

enum class Construction { H4D7, H5D6, H6D5, H22D3, H13D4 };

std::string to_string(Construction c);
std::optional<Construction> construction_from_string(const std::string& name);

struct WitnessGroup {
  std::string name;
  std::vector<EdgeId> edges;
};

// Per-source-object edge groups of a generated instance: the always-selected
// base and the choice groups whose selection pattern encodes the source
// witness (cover membership / truth value).
struct WitnessMap {
  Construction construction = Construction::H4D7;
  Mode mode = Mode::VertexTwoConnected;
  Cost budget = 0;
  int source_n = 0;  // source vertices (HCVC/CVC) or variables (SAT)
  int source_m = 0;  // source edges or clauses
  std::vector<VertexId> source_order;             // gadget index -> source vertex id
  std::vector<std::pair<int, int>> source_edges;  // source edges as gadget-index pairs
  std::vector<Sat22Clause> clauses;               // H5D6 only
  std::vector<WitnessGroup> groups;

  const std::vector<EdgeId>* find(const std::string& name) const;
  // Union of all choice groups; equals the reduced instance's unforced edges.
  std::vector<EdgeId> choice_edges() const;
};

struct GeneratedInstance {
  Instance instance;
  WitnessMap witness;
};

// Construction with vertex gadgets K4 and edge gadgets; eta=4, Delta=7,
// k = |E_2'| + 2m + n + p. Valid unchanged in both modes (4-vertex habitats).
GeneratedInstance gen_h4d7(const HcvcInput& input, Mode mode = Mode::VertexTwoConnected);

// Wheel gadgets per variable and clause; eta=5, Delta=6, k = 27N + 14M.
// Vertex mode only.
GeneratedInstance gen_h5d6(const Sat22Input& input);

// eta=6, Delta=5, k = (7n + 11n/2) + (4n + 2n + p); both modes.
GeneratedInstance gen_h6d5(const HcvcInput& input, Mode mode);

// Doubled chains; eta=22, Delta=3, k = |E'| - n + p; both modes.
GeneratedInstance gen_h22d3(const HcvcInput& input, Mode mode);

// From cubic vertex cover (no Hamiltonian cycle). Vertex mode: single
// connectors, eta=13, Delta=4. Edge mode: doubled connectors, eta=14.
// k = |E'| - n + p.
GeneratedInstance gen_h13d4(const HcvcInput& input, Mode mode);

GeneratedInstance generate(Construction c, const HcvcInput& input, Mode mode);

struct VertexCoverResult {
  bool yes = false;
  std::vector<VertexId> witness;  // a cover of size <= p when yes
};

// Exact decision by exhaustive subset search; n <= 20.
VertexCoverResult oracle_vertex_cover(const Graph& graph, int p);
int minimum_vertex_cover_size(const Graph& graph);

struct SatResult {
  bool satisfiable = false;
  std::vector<bool> assignment;
};

// Exact decision by exhaustive assignment search; N <= 24.
SatResult oracle_sat22(const Sat22Input& input);

// Forward witness translation per the hardness proofs. The cover is given in
// source vertex ids; the assignment is indexed by variable.
std::vector<EdgeId> translate_witness(const WitnessMap& map, std::span<const VertexId> cover);
std::vector<EdgeId> translate_witness(const WitnessMap& map, const std::vector<bool>& assignment);

// Backward extraction, provided where the proofs read the witness off the
// solution directly (H5D6 and H22D3/H13D4).
std::vector<bool> extract_assignment(const WitnessMap& map, std::span<const EdgeId> solution);
std::vector<VertexId> extract_cover(const WitnessMap& map, std::span<const EdgeId> solution);

}  // namespace rgbp

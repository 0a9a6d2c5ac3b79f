#pragma once

#include <iosfwd>
#include <string>

#include "rgbp/core.hpp"
#include "rgbp/reductions.hpp"

namespace rgbp {

// Parse failure with the first offending line.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
};

// Line-oriented instance format, '#' comments:
//   rgbp 1
//   mode vertex|edge
//   vertices <n>
//   edge <u> <v> [cost]     (cost defaults to 1)
//   forced <u> <v>
//   habitat <v...>
//   budget <k>
Instance parse_instance(const std::string& text);

// Canonical form: sorted edge list, sorted habitats, deterministic whitespace.
std::string serialize_instance(const Instance& instance);

// Instance with edges sorted by endpoints (ids remapped) and habitats sorted.
Instance canonical(const Instance& instance);

// Solution document: status / cost / selected <u> <v> / component <i> cost <c>.
std::string serialize_solution(const Instance& instance, const Solution& solution);

struct ParsedSolution {
  SolveStatus status = SolveStatus::Infeasible;
  Cost cost = 0;
  std::vector<EdgeId> selected;
};

// Reads a solution document against its instance (edges resolved by endpoints).
ParsedSolution parse_solution(const Instance& instance, const std::string& text);

// Source format for HCVC/CVC:
//   <n>
//   <u> <v>        (one line per edge)
//   c <v1> ... <vn>  (optional Hamiltonian cycle)
//   p <int>
HcvcInput parse_hcvc(const std::string& text);
std::string serialize_hcvc(const HcvcInput& input);

// DIMACS CNF with exactly three distinct variables per clause; the (2,2)
// balance is validated, not trusted.
Sat22Input parse_dimacs_cnf(const std::string& text);
std::string serialize_dimacs_cnf(const Sat22Input& input);

// Witness map as '#' comment lines, safe to append to an instance document.
std::string serialize_witness_comments(const WitnessMap& map);

}  // namespace rgbp

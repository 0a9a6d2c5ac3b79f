#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "rgbp/io.hpp"
#include "rgbp/reductions.hpp"
#include "support/corpus.hpp"
#include "support/oracle.hpp"

using namespace rgbp;
using testsupport::read_corpus_file;

TEST_CASE("minimal document parses") {
  std::string doc =
      "rgbp 1\n"
      "mode vertex\n"
      "vertices 3\n"
      "edge 0 1\n"
      "edge 0 2\n"
      "edge 1 2\n"
      "habitat 0 1 2\n"
      "budget 3\n";
  Instance inst = parse_instance(doc);
  CHECK(inst.graph.vertex_count() == 3);
  CHECK(inst.graph.edge_count() == 3);
  CHECK(inst.habitats.size() == 1);
  CHECK(inst.budget == 3);
  // omitted cost lines default to unit costs
  for (Cost c : inst.cost) CHECK(c == 1);
}

TEST_CASE("parse diagnostics carry line numbers") {
  std::string dup =
      "rgbp 1\n"
      "vertices 3\n"
      "edge 0 1\n"
      "edge 1 0\n";
  try {
    parse_instance(dup);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(std::string(e.what()).find("duplicate edge") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_instance("rgbp 1\nvertices 2\nedge 0 1 -3\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("rgbp 1\nvertices 2\nfrobnicate\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("rgbp 2\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("rgbp 1\nvertices 2\nedge 0 5\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("rgbp 1\nvertices 3\nhabitat 0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("rgbp 1\nvertices 3\nforced 0 1\n"), ParseError);
}

TEST_CASE("round-trip: second serialization is byte-identical") {
  for (const char* name : {"triangle.rgbp", "fig_two_k4_chains.rgbp"}) {
    Instance inst = parse_instance(read_corpus_file(name));
    std::string once = serialize_instance(inst);
    std::string twice = serialize_instance(parse_instance(once));
    CHECK(once == twice);
    CHECK(canonical(parse_instance(once)) == canonical(inst));
  }
}

TEST_CASE("round-trip on random instances and generated instances") {
  testsupport::Rng rng(160309);
  for (int iter = 0; iter < 300; ++iter) {
    Instance inst = testsupport::random_instance(rng);
    std::string once = serialize_instance(inst);
    Instance back = parse_instance(once);
    CHECK(serialize_instance(back) == once);
    CHECK(canonical(back) == canonical(inst));
  }
  HcvcInput k4 = parse_hcvc(read_corpus_file("k4.hcvc"));
  for (Construction c :
       {Construction::H4D7, Construction::H6D5, Construction::H22D3, Construction::H13D4}) {
    GeneratedInstance g = generate(c, k4, Mode::VertexTwoConnected);
    std::string once = serialize_instance(g.instance);
    CHECK(serialize_instance(parse_instance(once)) == once);
  }
}

TEST_CASE("generated h22d3 document reports eta 22 after reparse") {
  HcvcInput k4 = parse_hcvc(read_corpus_file("k4.hcvc"));
  GeneratedInstance g = gen_h22d3(k4, Mode::VertexTwoConnected);
  Instance back = parse_instance(serialize_instance(g.instance));
  CHECK(instance_stats(back).eta == 22);
  CHECK(instance_stats(back).delta == 3);
}

TEST_CASE("forced lines appear exactly for the forced set") {
  Instance inst = parse_instance(read_corpus_file("fig_two_k4_chains.rgbp"));
  std::string doc = serialize_instance(inst);
  int forced_lines = 0;
  std::istringstream in(doc);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("forced ", 0) == 0) ++forced_lines;
  CHECK(forced_lines == 3);
}

TEST_CASE("solution documents round-trip against their instance") {
  Instance inst = parse_instance(read_corpus_file("triangle.rgbp"));
  Solution sol;
  sol.status = SolveStatus::Optimal;
  sol.selected = {0, 1, 2};
  sol.cost = 3;
  sol.yes = true;
  std::string doc = serialize_solution(inst, sol);
  ParsedSolution back = parse_solution(inst, doc);
  CHECK(back.status == SolveStatus::Optimal);
  CHECK(back.cost == 3);
  CHECK(back.selected == sol.selected);

  CHECK_THROWS_AS(parse_solution(inst, "status optimal\nselected 0 9\n"), ParseError);
  CHECK_THROWS_AS(parse_solution(inst, "cost 3\n"), ParseError);  // missing status
}

TEST_CASE("hcvc and dimacs formats round-trip") {
  for (const char* name : {"k4.hcvc", "prism.hcvc", "k33.hcvc", "cube8.hcvc"}) {
    HcvcInput in = parse_hcvc(read_corpus_file(name));
    HcvcInput back = parse_hcvc(serialize_hcvc(in));
    CHECK(back.graph == in.graph);
    CHECK(back.cycle == in.cycle);
    CHECK(back.p == in.p);
  }
  for (const char* name : {"sat_n3_sat.cnf", "sat_n6_sat.cnf", "sat_unsat.cnf"}) {
    Sat22Input f = parse_dimacs_cnf(read_corpus_file(name));
    Sat22Input back = parse_dimacs_cnf(serialize_dimacs_cnf(f));
    CHECK(back.num_variables == f.num_variables);
    REQUIRE(back.clauses.size() == f.clauses.size());
    for (size_t i = 0; i < f.clauses.size(); ++i) {
      CHECK(back.clauses[i].var == f.clauses[i].var);
      CHECK(back.clauses[i].positive == f.clauses[i].positive);
    }
  }
}

TEST_CASE("dimacs validation is computed, not trusted") {
  // x1 occurs three times positively
  std::string bad = "p cnf 3 4\n1 2 3 0\n1 -2 -3 0\n1 2 -3 0\n-1 -2 3 0\n";
  CHECK_THROWS_AS(parse_dimacs_cnf(bad), InputError);
  // tautological clause
  std::string taut = "p cnf 3 4\n1 -1 2 0\n1 -2 -3 0\n-1 2 -3 0\n-1 -2 3 3 0\n";
  CHECK_THROWS(parse_dimacs_cnf(taut));
  // clause arity
  CHECK_THROWS_AS(parse_dimacs_cnf("p cnf 2 1\n1 2 0\n"), ParseError);
}

TEST_CASE("parser survives random bytes") {
  testsupport::Rng rng(321123);
  const char alphabet[] = "rgbp1 vertices\nedge#habitat budget-09 ax\t";
  for (int iter = 0; iter < 10000; ++iter) {
    int len = rng.range(0, 120);
    std::string text;
    for (int i = 0; i < len; ++i) {
      if (rng.chance(30))
        text.push_back(static_cast<char>(rng.below(256)));
      else
        text.push_back(alphabet[static_cast<size_t>(rng.below(sizeof(alphabet) - 1))]);
    }
    try {
      parse_instance(text);
    } catch (const std::exception&) {
      // any structured failure is fine; crashing is not
    }
    try {
      parse_hcvc(text);
    } catch (const std::exception&) {
    }
    try {
      parse_dimacs_cnf(text);
    } catch (const std::exception&) {
    }
  }
}

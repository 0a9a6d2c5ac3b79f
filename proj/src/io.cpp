#include "rgbp/io.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace rgbp {

namespace {

constexpr int kMaxVertices = 1'000'000;  // practical parser guard

struct LineLexer {
  std::istringstream stream;
  int line_number = 0;
  std::string line;
  std::vector<std::string> tokens;

  explicit LineLexer(const std::string& text) : stream(text) {}

  // next non-empty line, comments stripped; false at end of input
  bool next() {
    while (std::getline(stream, line)) {
      ++line_number;
      if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
      tokens.clear();
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }
};

long long parse_int(const LineLexer& lx, const std::string& tok, long long lo, long long hi) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(lx.line_number, "expected an integer, got '" + tok + "'");
  if (value < lo || value > hi)
    throw ParseError(lx.line_number, "value " + tok + " out of range");
  return value;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  LineLexer lx(text);
  if (!lx.next() || lx.tokens.size() != 2 || lx.tokens[0] != "rgbp")
    throw ParseError(lx.line_number, "expected header 'rgbp 1'");
  if (parse_int(lx, lx.tokens[1], 0, 1'000'000) != 1)
    throw ParseError(lx.line_number, "unsupported format version");

  Instance inst;
  int vertices = -1;
  std::vector<Edge> edges;
  std::vector<Cost> costs;
  std::vector<std::pair<VertexId, VertexId>> forced_pairs;
  std::vector<int> forced_lines;
  bool saw_budget = false;

  auto require_vertices = [&](const char* directive) {
    if (vertices < 0)
      throw ParseError(lx.line_number,
                       std::string("'") + directive + "' before 'vertices'");
  };

  while (lx.next()) {
    const std::string& d = lx.tokens[0];
    if (d == "mode") {
      if (lx.tokens.size() != 2) throw ParseError(lx.line_number, "mode needs one argument");
      if (lx.tokens[1] == "vertex")
        inst.mode = Mode::VertexTwoConnected;
      else if (lx.tokens[1] == "edge")
        inst.mode = Mode::EdgeTwoConnected;
      else
        throw ParseError(lx.line_number, "mode must be 'vertex' or 'edge'");
    } else if (d == "vertices") {
      if (lx.tokens.size() != 2) throw ParseError(lx.line_number, "vertices needs one argument");
      if (vertices >= 0) throw ParseError(lx.line_number, "duplicate 'vertices' line");
      vertices = static_cast<int>(parse_int(lx, lx.tokens[1], 0, kMaxVertices));
    } else if (d == "edge") {
      require_vertices("edge");
      if (lx.tokens.size() != 3 && lx.tokens.size() != 4)
        throw ParseError(lx.line_number, "edge needs 'edge u v [cost]'");
      auto u = static_cast<VertexId>(parse_int(lx, lx.tokens[1], 0, vertices - 1));
      auto v = static_cast<VertexId>(parse_int(lx, lx.tokens[2], 0, vertices - 1));
      if (u == v) throw ParseError(lx.line_number, "self-loop");
      Edge e{std::min(u, v), std::max(u, v)};
      for (const Edge& prev : edges)
        if (prev == e) throw ParseError(lx.line_number, "duplicate edge");
      edges.push_back(e);
      costs.push_back(lx.tokens.size() == 4
                          ? parse_int(lx, lx.tokens[3], 0, std::numeric_limits<Cost>::max() / 4)
                          : 1);
    } else if (d == "forced") {
      require_vertices("forced");
      if (lx.tokens.size() != 3) throw ParseError(lx.line_number, "forced needs 'forced u v'");
      auto u = static_cast<VertexId>(parse_int(lx, lx.tokens[1], 0, vertices - 1));
      auto v = static_cast<VertexId>(parse_int(lx, lx.tokens[2], 0, vertices - 1));
      forced_pairs.push_back({std::min(u, v), std::max(u, v)});
      forced_lines.push_back(lx.line_number);
    } else if (d == "habitat") {
      require_vertices("habitat");
      if (lx.tokens.size() < 2) throw ParseError(lx.line_number, "habitat needs vertices");
      std::vector<VertexId> vs;
      for (size_t i = 1; i < lx.tokens.size(); ++i)
        vs.push_back(static_cast<VertexId>(parse_int(lx, lx.tokens[i], 0, vertices - 1)));
      std::vector<VertexId> sorted = vs;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError(lx.line_number, "duplicate vertex in habitat");
      inst.habitats.push_back(Habitat(std::move(vs)));
    } else if (d == "budget") {
      if (lx.tokens.size() != 2) throw ParseError(lx.line_number, "budget needs one argument");
      if (saw_budget) throw ParseError(lx.line_number, "duplicate 'budget' line");
      inst.budget = parse_int(lx, lx.tokens[1], 0, std::numeric_limits<Cost>::max() / 4);
      saw_budget = true;
    } else {
      throw ParseError(lx.line_number, "unknown directive '" + d + "'");
    }
  }
  if (vertices < 0) throw ParseError(lx.line_number, "missing 'vertices' line");

  inst.graph = Graph(vertices, edges);
  inst.cost = std::move(costs);
  inst.forced.assign(static_cast<size_t>(inst.graph.edge_count()), false);
  for (size_t i = 0; i < forced_pairs.size(); ++i) {
    auto id = inst.graph.find_edge(forced_pairs[i].first, forced_pairs[i].second);
    if (!id) throw ParseError(forced_lines[i], "forced line names a non-edge");
    inst.forced[static_cast<size_t>(*id)] = true;
  }
  inst.validate();
  return inst;
}

Instance canonical(const Instance& instance) {
  std::vector<size_t> order(static_cast<size_t>(instance.graph.edge_count()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return instance.graph.edge(static_cast<EdgeId>(a)) <
           instance.graph.edge(static_cast<EdgeId>(b));
  });
  Instance out;
  out.mode = instance.mode;
  out.budget = instance.budget;
  std::vector<Edge> edges;
  for (size_t i : order) {
    edges.push_back(instance.graph.edge(static_cast<EdgeId>(i)));
    out.cost.push_back(instance.cost[i]);
    out.forced.push_back(instance.forced[i]);
  }
  out.graph = Graph(instance.graph.vertex_count(), edges);
  out.habitats = instance.habitats;
  std::sort(out.habitats.begin(), out.habitats.end(),
            [](const Habitat& a, const Habitat& b) { return a.vertices < b.vertices; });
  return out;
}

std::string serialize_instance(const Instance& instance) {
  Instance c = canonical(instance);
  std::ostringstream out;
  out << "rgbp 1\n";
  out << "mode " << to_string(c.mode) << '\n';
  out << "vertices " << c.graph.vertex_count() << '\n';
  for (EdgeId e = 0; e < c.graph.edge_count(); ++e) {
    const Edge& ed = c.graph.edge(e);
    out << "edge " << ed.u << ' ' << ed.v;
    if (c.cost[static_cast<size_t>(e)] != 1) out << ' ' << c.cost[static_cast<size_t>(e)];
    out << '\n';
  }
  for (EdgeId e = 0; e < c.graph.edge_count(); ++e)
    if (c.forced[static_cast<size_t>(e)]) {
      const Edge& ed = c.graph.edge(e);
      out << "forced " << ed.u << ' ' << ed.v << '\n';
    }
  for (const Habitat& h : c.habitats) {
    out << "habitat";
    for (VertexId v : h.vertices) out << ' ' << v;
    out << '\n';
  }
  out << "budget " << c.budget << '\n';
  return out.str();
}

std::string serialize_solution(const Instance& instance, const Solution& solution) {
  std::ostringstream out;
  out << "status " << to_string(solution.status) << '\n';
  if (solution.status != SolveStatus::Infeasible) {
    out << "cost " << solution.cost << '\n';
    std::vector<Edge> sel;
    for (EdgeId e : solution.selected) sel.push_back(instance.graph.edge(e));
    std::sort(sel.begin(), sel.end());
    for (const Edge& e : sel) out << "selected " << e.u << ' ' << e.v << '\n';
  }
  int component = 0;
  for (const TraceRecord& t : solution.trace) {
    if (t.origin.rfind("component ", 0) == 0) {
      auto pos = t.origin.rfind("cost ");
      if (pos != std::string::npos)
        out << "component " << component++ << " cost " << t.origin.substr(pos + 5) << '\n';
    }
  }
  return out.str();
}

ParsedSolution parse_solution(const Instance& instance, const std::string& text) {
  LineLexer lx(text);
  ParsedSolution sol;
  bool saw_status = false;
  while (lx.next()) {
    const std::string& d = lx.tokens[0];
    if (d == "status") {
      if (lx.tokens.size() != 2) throw ParseError(lx.line_number, "status needs one argument");
      if (lx.tokens[1] == "optimal")
        sol.status = SolveStatus::Optimal;
      else if (lx.tokens[1] == "feasible")
        sol.status = SolveStatus::Feasible;
      else if (lx.tokens[1] == "infeasible")
        sol.status = SolveStatus::Infeasible;
      else
        throw ParseError(lx.line_number, "unknown status '" + lx.tokens[1] + "'");
      saw_status = true;
    } else if (d == "cost") {
      if (lx.tokens.size() != 2) throw ParseError(lx.line_number, "cost needs one argument");
      sol.cost = parse_int(lx, lx.tokens[1], 0, std::numeric_limits<Cost>::max() / 4);
    } else if (d == "selected") {
      if (lx.tokens.size() != 3) throw ParseError(lx.line_number, "selected needs 'selected u v'");
      auto u = static_cast<VertexId>(
          parse_int(lx, lx.tokens[1], 0, instance.graph.vertex_count() - 1));
      auto v = static_cast<VertexId>(
          parse_int(lx, lx.tokens[2], 0, instance.graph.vertex_count() - 1));
      auto id = instance.graph.find_edge(u, v);
      if (!id) throw ParseError(lx.line_number, "selected line names a non-edge");
      sol.selected.push_back(*id);
    } else if (d == "component") {
      // informational breakdown; ignored on input
    } else {
      throw ParseError(lx.line_number, "unknown directive '" + d + "'");
    }
  }
  if (!saw_status) throw ParseError(lx.line_number, "missing 'status' line");
  std::sort(sol.selected.begin(), sol.selected.end());
  sol.selected.erase(std::unique(sol.selected.begin(), sol.selected.end()), sol.selected.end());
  return sol;
}

HcvcInput parse_hcvc(const std::string& text) {
  LineLexer lx(text);
  if (!lx.next() || lx.tokens.size() != 1)
    throw ParseError(lx.line_number, "expected vertex count on the first line");
  int n = static_cast<int>(parse_int(lx, lx.tokens[0], 0, kMaxVertices));
  std::vector<Edge> edges;
  HcvcInput input;
  bool saw_p = false;
  while (lx.next()) {
    if (lx.tokens[0] == "c") {
      if (!input.cycle.empty()) throw ParseError(lx.line_number, "duplicate cycle line");
      for (size_t i = 1; i < lx.tokens.size(); ++i)
        input.cycle.push_back(static_cast<VertexId>(parse_int(lx, lx.tokens[i], 0, n - 1)));
    } else if (lx.tokens[0] == "p") {
      if (lx.tokens.size() != 2) throw ParseError(lx.line_number, "p needs one integer");
      input.p = static_cast<int>(parse_int(lx, lx.tokens[1], 0, kMaxVertices));
      saw_p = true;
    } else {
      if (lx.tokens.size() != 2) throw ParseError(lx.line_number, "expected an edge line 'u v'");
      auto u = static_cast<VertexId>(parse_int(lx, lx.tokens[0], 0, n - 1));
      auto v = static_cast<VertexId>(parse_int(lx, lx.tokens[1], 0, n - 1));
      edges.push_back({u, v});
    }
  }
  if (!saw_p) throw ParseError(lx.line_number, "missing budget line 'p <int>'");
  input.graph = Graph(n, edges);
  return input;
}

std::string serialize_hcvc(const HcvcInput& input) {
  std::ostringstream out;
  out << input.graph.vertex_count() << '\n';
  for (const Edge& e : input.graph.edges()) out << e.u << ' ' << e.v << '\n';
  if (!input.cycle.empty()) {
    out << 'c';
    for (VertexId v : input.cycle) out << ' ' << v;
    out << '\n';
  }
  out << "p " << input.p << '\n';
  return out.str();
}

Sat22Input parse_dimacs_cnf(const std::string& text) {
  LineLexer lx(text);
  Sat22Input input;
  int expect_clauses = -1;
  std::vector<int> pending;
  while (lx.next()) {
    if (lx.tokens[0] == "c") continue;  // DIMACS comment
    if (lx.tokens[0] == "p") {
      if (lx.tokens.size() != 4 || lx.tokens[1] != "cnf")
        throw ParseError(lx.line_number, "expected 'p cnf <vars> <clauses>'");
      input.num_variables = static_cast<int>(parse_int(lx, lx.tokens[2], 1, kMaxVertices));
      expect_clauses = static_cast<int>(parse_int(lx, lx.tokens[3], 0, kMaxVertices));
      continue;
    }
    if (input.num_variables == 0)
      throw ParseError(lx.line_number, "clause before 'p cnf' header");
    for (const std::string& tok : lx.tokens) {
      int lit = static_cast<int>(parse_int(lx, tok, -input.num_variables, input.num_variables));
      if (lit == 0) {
        if (pending.size() != 3)
          throw ParseError(lx.line_number, "clause must have exactly three literals");
        Sat22Clause c;
        for (int t = 0; t < 3; ++t) {
          c.var[static_cast<size_t>(t)] = std::abs(pending[static_cast<size_t>(t)]) - 1;
          c.positive[static_cast<size_t>(t)] = pending[static_cast<size_t>(t)] > 0;
        }
        input.clauses.push_back(c);
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (!pending.empty()) throw ParseError(lx.line_number, "clause not terminated by 0");
  if (expect_clauses >= 0 && expect_clauses != static_cast<int>(input.clauses.size()))
    throw ParseError(lx.line_number, "clause count does not match the header");
  input.validate();
  return input;
}

std::string serialize_dimacs_cnf(const Sat22Input& input) {
  std::ostringstream out;
  out << "c (2,2)-3-CNF: every variable twice positive and twice negative\n";
  out << "p cnf " << input.num_variables << ' ' << input.clauses.size() << '\n';
  for (const Sat22Clause& c : input.clauses) {
    for (int t = 0; t < 3; ++t) {
      int lit = c.var[static_cast<size_t>(t)] + 1;
      out << (c.positive[static_cast<size_t>(t)] ? lit : -lit) << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

std::string serialize_witness_comments(const WitnessMap& map) {
  std::ostringstream out;
  out << "# witness construction " << to_string(map.construction) << '\n';
  out << "# witness mode " << to_string(map.mode) << '\n';
  out << "# witness budget " << map.budget << '\n';
  out << "# witness source " << map.source_n << ' ' << map.source_m << '\n';
  for (const WitnessGroup& g : map.groups) {
    out << "# witness group " << g.name;
    for (EdgeId e : g.edges) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

}  // namespace rgbp

// Command-line front-end: solve, verify, reduce, generate, stats, bench.
// Exit codes: 0 = yes, 1 = no, 2 = error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rgbp/connectivity.hpp"
#include "rgbp/habitat_graph.hpp"
#include "rgbp/io.hpp"
#include "rgbp/parallel.hpp"
#include "rgbp/preprocess.hpp"
#include "rgbp/reductions.hpp"
#include "rgbp/solver.hpp"

namespace {

using namespace rgbp;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
}

int cmd_solve(const std::string& file) {
  Instance inst = parse_instance(read_input(file));
  auto t0 = std::chrono::steady_clock::now();
  Solution sol = solve(inst);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count();
  std::cout << serialize_solution(inst, sol);
  std::cout << "# wall_ms " << ms << '\n';
  return sol.status != SolveStatus::Infeasible && sol.yes ? 0 : 1;
}

int cmd_verify(const std::string& instance_file, const std::string& solution_file) {
  Instance inst = parse_instance(read_input(instance_file));
  ParsedSolution sol = parse_solution(inst, read_input(solution_file));
  VerifyResult r = verify(inst, sol.selected);
  if (!r.ok) {
    std::cout << "invalid: " << r.diagnostic << '\n';
    return 1;
  }
  std::cout << "valid cost " << inst.edge_set_cost(sol.selected) << '\n';
  return 0;
}

int cmd_reduce(const std::string& file) {
  Instance inst = parse_instance(read_input(file));
  ReduceResult r = reduce(inst);
  if (r.infeasible) {
    std::cout << "# infeasible: " << r.infeasible_reason << '\n';
    std::istringstream trace(r.trace.to_text());
    for (std::string line; std::getline(trace, line);) std::cout << "# trace " << line << '\n';
    return 1;
  }
  std::cout << serialize_instance(r.instance);
  std::istringstream trace(r.trace.to_text());
  for (std::string line; std::getline(trace, line);) std::cout << "# trace " << line << '\n';
  return 0;
}

int cmd_generate(const std::string& construction_name, const std::string& source_file,
                 const std::string& mode_name, const std::string& witness_file) {
  auto construction = construction_from_string(construction_name);
  if (!construction) throw InputError("unknown construction '" + construction_name + "'");
  Mode mode = Mode::VertexTwoConnected;
  if (mode_name == "edge")
    mode = Mode::EdgeTwoConnected;
  else if (mode_name != "vertex")
    throw InputError("mode must be 'vertex' or 'edge'");

  GeneratedInstance gen = [&] {
    if (*construction == Construction::H5D6) {
      if (mode == Mode::EdgeTwoConnected)
        throw InputError("h5d6 supports vertex mode only");
      return gen_h5d6(parse_dimacs_cnf(read_input(source_file)));
    }
    return generate(*construction, parse_hcvc(read_input(source_file)), mode);
  }();

  std::cout << serialize_instance(gen.instance);
  std::cout << serialize_witness_comments(gen.witness);
  if (!witness_file.empty()) write_output(witness_file, serialize_witness_comments(gen.witness));
  return 0;
}

int cmd_stats(const std::string& file, bool dump_meta) {
  Instance inst = parse_instance(read_input(file));
  InstanceStats stats = instance_stats(inst);
  BasicHabitatGraph hg = build(inst);
  ComponentDecomposition decomp = decompose(inst, hg);
  int paths = 0, cycles = 0, singletons = 0, other = 0;
  for (const Component& c : decomp.components) {
    switch (c.shape) {
      case ComponentShape::Singleton: ++singletons; break;
      case ComponentShape::Path: ++paths; break;
      case ComponentShape::Cycle: ++cycles; break;
      case ComponentShape::Other: ++other; break;
    }
  }
  std::cout << "eta " << stats.eta << '\n'
            << "delta " << stats.delta << '\n'
            << "vertices " << inst.graph.vertex_count() << '\n'
            << "edges " << inst.graph.edge_count() << '\n'
            << "habitats " << stats.num_habitats << '\n'
            << "free_edges " << stats.num_free_edges << '\n'
            << "components singleton=" << singletons << " path=" << paths << " cycle=" << cycles
            << " other=" << other << '\n';
  if (dump_meta) {
    std::istringstream dump(hg.dump());
    for (std::string line; std::getline(dump, line);) std::cout << "meta " << line << '\n';
  }
  return 0;
}

int cmd_bench(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".rgbp")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no .rgbp files in '" << dir << "'\n";
    return 2;
  }

  struct Row {
    std::string name, status;
    Cost cost = 0;
    double reduce_ms = 0, decompose_ms = 0, solve_ms = 0;
    bool error = false;
  };
  std::vector<Row> rows(files.size());
  parallel_for(files.size(), [&](size_t i) {
    Row& row = rows[i];
    row.name = files[i].filename().string();
    try {
      Instance inst = parse_instance(read_input(files[i].string()));
      auto t0 = std::chrono::steady_clock::now();
      ReduceResult red = reduce(inst);
      auto t1 = std::chrono::steady_clock::now();
      row.reduce_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      if (red.infeasible) {
        row.status = "no";
        return;
      }
      BasicHabitatGraph hg = build(red.instance);
      ComponentDecomposition decomp = decompose(red.instance, hg);
      auto t2 = std::chrono::steady_clock::now();
      row.decompose_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
      Solution sol = solve(inst);
      auto t3 = std::chrono::steady_clock::now();
      row.solve_ms = std::chrono::duration<double, std::milli>(t3 - t2).count();
      row.status = sol.status == SolveStatus::Infeasible ? "no" : (sol.yes ? "yes" : "no");
      row.cost = sol.cost;
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
      row.error = true;
    }
  });
  std::cout << "file status cost reduce_ms decompose_ms solve_ms\n";
  for (const Row& r : rows) {
    std::cout << r.name << ' ' << r.status << ' ' << r.cost << ' ' << r.reduce_ms << ' '
              << r.decompose_ms << ' ' << r.solve_ms << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver and instance generator for robust green bridge placement"};
  app.require_subcommand(1);

  std::string file = "-", instance_file, solution_file, construction, source_file;
  std::string mode = "vertex", witness_file, bench_dir;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve an instance, print the solution");
  solve_cmd->add_option("file", file, "instance file ('-' = stdin)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a solution against an instance");
  verify_cmd->add_option("instance", instance_file)->required();
  verify_cmd->add_option("solution", solution_file)->required();

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "print the reduced instance and trace");
  reduce_cmd->add_option("file", file);

  CLI::App* gen_cmd = app.add_subcommand("generate", "emit a hardness-construction instance");
  gen_cmd->add_option("construction", construction, "h4d7|h5d6|h6d5|h22d3|h13d4")->required();
  gen_cmd->add_option("source", source_file, "HCVC/CVC graph file or DIMACS CNF")->required();
  gen_cmd->add_option("--mode", mode, "vertex|edge");
  gen_cmd->add_option("--witness", witness_file, "also write the witness map here");

  bool dump_meta = false;
  CLI::App* stats_cmd = app.add_subcommand("stats", "print instance statistics");
  stats_cmd->add_option("file", file);
  stats_cmd->add_flag("--meta", dump_meta, "also dump the basic habitat graph edge list");

  CLI::App* bench_cmd = app.add_subcommand("bench", "run all .rgbp instances in a directory");
  bench_cmd->add_option("dir", bench_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(solve_cmd)) return cmd_solve(file);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(instance_file, solution_file);
    if (app.got_subcommand(reduce_cmd)) return cmd_reduce(file);
    if (app.got_subcommand(gen_cmd))
      return cmd_generate(construction, source_file, mode, witness_file);
    if (app.got_subcommand(stats_cmd)) return cmd_stats(file, dump_meta);
    if (app.got_subcommand(bench_cmd)) return cmd_bench(bench_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

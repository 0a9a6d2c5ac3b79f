#include "rgbp/reductions.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace rgbp {

void HcvcInput::validate(bool require_cycle) const {
  const int n = graph.vertex_count();
  if (n < 4) throw InputError("cubic graph needs at least 4 vertices");
  for (VertexId v = 0; v < n; ++v)
    if (graph.degree(v) != 3)
      throw InputError("vertex " + std::to_string(v) + " has degree " +
                       std::to_string(graph.degree(v)) + ", graph is not cubic");
  if (p < 0) throw InputError("negative cover budget p");
  if (cycle.empty()) {
    if (require_cycle) throw InputError("construction requires a Hamiltonian cycle");
    return;
  }
  if (static_cast<int>(cycle.size()) != n)
    throw InputError("Hamiltonian cycle must visit every vertex exactly once");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (VertexId v : cycle) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
      throw InputError("Hamiltonian cycle must visit every vertex exactly once");
    seen[static_cast<size_t>(v)] = true;
  }
  for (int i = 0; i < n; ++i)
    if (!graph.find_edge(cycle[static_cast<size_t>(i)],
                         cycle[static_cast<size_t>((i + 1) % n)]))
      throw InputError("Hamiltonian cycle uses a non-edge");
}

void Sat22Input::validate() const {
  if (num_variables <= 0) throw InputError("formula needs at least one variable");
  if (3 * static_cast<int>(clauses.size()) != 4 * num_variables)
    throw InputError("(2,2)-balance requires 3M = 4N");
  std::vector<int> pos(static_cast<size_t>(num_variables), 0);
  std::vector<int> neg(static_cast<size_t>(num_variables), 0);
  for (const Sat22Clause& c : clauses) {
    for (int t = 0; t < 3; ++t) {
      int v = c.var[static_cast<size_t>(t)];
      if (v < 0 || v >= num_variables) throw InputError("clause literal out of range");
      (c.positive[static_cast<size_t>(t)] ? pos : neg)[static_cast<size_t>(v)]++;
    }
    // repeated variables are allowed (occurrence-counted balance), but a
    // complementary pair makes the clause tautological
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (c.var[static_cast<size_t>(a)] == c.var[static_cast<size_t>(b)] &&
            c.positive[static_cast<size_t>(a)] != c.positive[static_cast<size_t>(b)])
          throw InputError("tautological clause");
  }
  for (int v = 0; v < num_variables; ++v)
    if (pos[static_cast<size_t>(v)] != 2 || neg[static_cast<size_t>(v)] != 2)
      throw InputError("variable " + std::to_string(v) +
                       " must occur exactly twice positively and twice negatively");
}

std::string to_string(Construction c) {
  switch (c) {
    case Construction::H4D7: return "h4d7";
    case Construction::H5D6: return "h5d6";
    case Construction::H6D5: return "h6d5";
    case Construction::H22D3: return "h22d3";
    case Construction::H13D4: return "h13d4";
  }
  return "?";
}

std::optional<Construction> construction_from_string(const std::string& name) {
  if (name == "h4d7") return Construction::H4D7;
  if (name == "h5d6") return Construction::H5D6;
  if (name == "h6d5") return Construction::H6D5;
  if (name == "h22d3") return Construction::H22D3;
  if (name == "h13d4") return Construction::H13D4;
  return std::nullopt;
}

const std::vector<EdgeId>* WitnessMap::find(const std::string& name) const {
  for (const WitnessGroup& g : groups)
    if (g.name == name) return &g.edges;
  return nullptr;
}

std::vector<EdgeId> WitnessMap::choice_edges() const {
  std::vector<EdgeId> out;
  for (const WitnessGroup& g : groups)
    if (g.name != "always") out.insert(out.end(), g.edges.begin(), g.edges.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct Builder {
  int n = 0;
  std::vector<Edge> edges;
  std::map<std::pair<VertexId, VertexId>, EdgeId> index;

  EdgeId add(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    auto [it, fresh] = index.insert({{a, b}, static_cast<EdgeId>(edges.size())});
    if (!fresh) throw std::logic_error("generator added a duplicate edge");
    edges.push_back({a, b});
    return it->second;
  }

  EdgeId id(VertexId a, VertexId b) const {
    if (a > b) std::swap(a, b);
    auto it = index.find({a, b});
    if (it == index.end()) throw std::logic_error("generator referenced a missing edge");
    return it->second;
  }
};

// Source edges as cycle-position pairs: the Hamiltonian tuples (i, i+1 mod n)
// first, then chords in lexicographic order.
struct SourceLayout {
  int n = 0;
  std::vector<VertexId> order;                 // position -> source vertex id
  std::vector<std::pair<int, int>> hamilton;   // X'
  std::vector<std::pair<int, int>> chords;     // X''
  std::vector<std::pair<int, int>> all;        // X' then X''

  static SourceLayout from(const HcvcInput& input, bool use_cycle) {
    SourceLayout s;
    s.n = input.graph.vertex_count();
    if (use_cycle) {
      s.order = input.cycle;
      std::vector<int> pos(static_cast<size_t>(s.n));
      for (int i = 0; i < s.n; ++i) pos[static_cast<size_t>(s.order[static_cast<size_t>(i)])] = i;
      for (int i = 0; i < s.n; ++i) s.hamilton.push_back({i, (i + 1) % s.n});
      for (const Edge& e : input.graph.edges()) {
        int a = pos[static_cast<size_t>(e.u)];
        int b = pos[static_cast<size_t>(e.v)];
        if (a > b) std::swap(a, b);
        if (b == a + 1 || (a == 0 && b == s.n - 1)) continue;  // cycle edge
        s.chords.push_back({a, b});
      }
      std::sort(s.chords.begin(), s.chords.end());
      s.all = s.hamilton;
      s.all.insert(s.all.end(), s.chords.begin(), s.chords.end());
    } else {
      s.order.resize(static_cast<size_t>(s.n));
      std::iota(s.order.begin(), s.order.end(), 0);
      for (const Edge& e : input.graph.edges()) s.all.push_back({e.u, e.v});
      std::sort(s.all.begin(), s.all.end());
    }
    return s;
  }
};

std::string group_name(const char* kind, int i, const char* suffix) {
  return std::string(kind) + "_" + std::to_string(i) + "_" + suffix;
}

}  // namespace

GeneratedInstance gen_h4d7(const HcvcInput& input, Mode mode) {
  input.validate(true);
  SourceLayout src = SourceLayout::from(input, true);
  const int n = src.n;
  const int m = static_cast<int>(src.all.size());

  Builder b;
  b.n = 4 * n + 4 * m;
  auto vi = [&](int i, int q) { return static_cast<VertexId>(4 * i + (q - 1)); };  // v_i^q
  auto gu = [&](int t) { return static_cast<VertexId>(4 * n + 4 * t + 0); };       // u_{i,j}
  auto gw = [&](int t) { return static_cast<VertexId>(4 * n + 4 * t + 1); };       // w_{i,j}
  auto gc = [&](int t) { return static_cast<VertexId>(4 * n + 4 * t + 2); };       // c_{i,j}
  auto gb = [&](int t) { return static_cast<VertexId>(4 * n + 4 * t + 3); };       // b_{i,j}

  for (int i = 0; i < n; ++i)
    for (int q = 1; q <= 4; ++q)
      for (int r = q + 1; r <= 4; ++r) b.add(vi(i, q), vi(i, r));
  for (int t = 0; t < m; ++t) {
    auto [i, j] = src.all[static_cast<size_t>(t)];
    b.add(gu(t), gw(t));
    b.add(gu(t), gc(t));
    b.add(gu(t), gb(t));
    b.add(gw(t), gc(t));
    b.add(gw(t), gb(t));
    b.add(gc(t), gb(t));
    // clique {v_i^3, v_i^4, u, b}: the missing pairs
    b.add(vi(i, 3), gu(t));
    b.add(vi(i, 3), gb(t));
    b.add(vi(i, 4), gu(t));
    b.add(vi(i, 4), gb(t));
    // clique {v_j^1, v_j^2, w, b}
    b.add(vi(j, 1), gw(t));
    b.add(vi(j, 1), gb(t));
    b.add(vi(j, 2), gw(t));
    b.add(vi(j, 2), gb(t));
  }

  std::vector<Habitat> habitats;
  for (int i = 0; i < n; ++i)
    habitats.push_back(Habitat({vi(i, 1), vi(i, 2), vi(i, 3), vi(i, 4)}));
  for (int t = 0; t < m; ++t) {
    auto [i, j] = src.all[static_cast<size_t>(t)];
    habitats.push_back(Habitat({gu(t), gw(t), gc(t), gb(t)}));                   // H_{i,j}
    habitats.push_back(Habitat({vi(i, 3), gu(t), gb(t), vi(i, 4)}));             // H'_{i,j}
    habitats.push_back(Habitat({vi(j, 1), gw(t), gb(t), vi(j, 2)}));             // H''_{i,j}
    habitats.push_back(Habitat({vi(i, 1), vi(i, 3), gu(t), vi(i, 4)}));          // H^1
    habitats.push_back(Habitat({vi(i, 3), gu(t), gc(t), gb(t)}));                // H^2
    habitats.push_back(Habitat({gu(t), gc(t), gw(t)}));                          // H^3
    habitats.push_back(Habitat({vi(j, 1), gw(t), gc(t), gb(t)}));                // H^4
    habitats.push_back(Habitat({vi(j, 1), vi(j, 3), gw(t), vi(j, 2)}));          // H^5
  }

  WitnessMap wm;
  wm.construction = Construction::H4D7;
  wm.mode = mode;
  wm.source_n = n;
  wm.source_m = m;
  wm.source_order = src.order;
  wm.source_edges = src.all;
  std::vector<bool> is_choice(b.edges.size(), false);
  for (int i = 0; i < n; ++i) {
    std::vector<EdgeId> ev = {b.id(vi(i, 1), vi(i, 2)), b.id(vi(i, 2), vi(i, 4)),
                              b.id(vi(i, 3), vi(i, 4))};
    for (EdgeId e : ev) is_choice[static_cast<size_t>(e)] = true;
    wm.groups.push_back({group_name("vertex", i, "choice"), ev});
  }
  for (int t = 0; t < m; ++t) {
    auto [i, j] = src.all[static_cast<size_t>(t)];
    std::vector<EdgeId> et = {b.id(vi(i, 4), gb(t)), b.id(gb(t), vi(j, 2)),
                              b.id(gu(t), gb(t)), b.id(gw(t), gb(t))};
    for (EdgeId e : et) is_choice[static_cast<size_t>(e)] = true;
    wm.groups.push_back({group_name("tuple", t, "choice"), et});
  }
  std::vector<EdgeId> e2;  // E_2' = E' \ E_1'
  for (EdgeId e = 0; e < static_cast<EdgeId>(b.edges.size()); ++e)
    if (!is_choice[static_cast<size_t>(e)]) e2.push_back(e);
  wm.groups.insert(wm.groups.begin(), {"always", e2});

  Cost k = static_cast<Cost>(e2.size()) + 2 * m + n + input.p;
  wm.budget = k;
  GeneratedInstance out{Instance::unit(Graph(b.n, b.edges), std::move(habitats), k, mode),
                        std::move(wm)};
  return out;
}

GeneratedInstance gen_h5d6(const Sat22Input& input) {
  input.validate();
  const int N = input.num_variables;
  const int M = static_cast<int>(input.clauses.size());

  Builder b;
  b.n = 7 * N + 7 * M;
  // variable block: v, t, t1, t2, f, f1, f2
  auto xv = [&](int i) { return static_cast<VertexId>(7 * i); };
  auto xt = [&](int i) { return static_cast<VertexId>(7 * i + 1); };
  auto xt1 = [&](int i) { return static_cast<VertexId>(7 * i + 2); };
  auto xt2 = [&](int i) { return static_cast<VertexId>(7 * i + 3); };
  auto xf = [&](int i) { return static_cast<VertexId>(7 * i + 4); };
  auto xf1 = [&](int i) { return static_cast<VertexId>(7 * i + 5); };
  auto xf2 = [&](int i) { return static_cast<VertexId>(7 * i + 6); };
  // clause block: w, u_{p}^{q} with p major
  auto cw = [&](int j) { return static_cast<VertexId>(7 * N + 7 * j); };
  auto cu = [&](int j, int p, int q) {
    return static_cast<VertexId>(7 * N + 7 * j + 1 + 2 * (p - 1) + (q - 1));
  };

  for (int i = 0; i < N; ++i) {
    b.add(xv(i), xt1(i));
    b.add(xv(i), xt2(i));
    b.add(xv(i), xf1(i));
    b.add(xv(i), xf2(i));
    b.add(xt1(i), xf1(i));
    b.add(xt2(i), xf2(i));
    b.add(xt(i), xt1(i));
    b.add(xt(i), xt2(i));
    b.add(xf(i), xf1(i));
    b.add(xf(i), xf2(i));
    b.add(xt1(i), xt2(i));  // E*: true choice
    b.add(xf1(i), xf2(i));  // E*: false choice
  }
  for (int j = 0; j < M; ++j) {
    for (int p = 1; p <= 3; ++p)
      for (int q = 1; q <= 2; ++q) b.add(cw(j), cu(j, p, q));
    for (int q = 1; q <= 2; ++q) {
      b.add(cu(j, 1, q), cu(j, 2, q));
      b.add(cu(j, 2, q), cu(j, 3, q));
      b.add(cu(j, 1, q), cu(j, 3, q));
    }
    for (int p = 1; p <= 3; ++p) b.add(cu(j, p, 1), cu(j, p, 2));  // E*: literal choice
  }
  for (int j = 0; j < M; ++j) {
    const Sat22Clause& c = input.clauses[static_cast<size_t>(j)];
    for (int p = 1; p <= 3; ++p) {
      int i = c.var[static_cast<size_t>(p - 1)];
      if (c.positive[static_cast<size_t>(p - 1)]) {
        b.add(cu(j, p, 1), xt(i));
        b.add(cu(j, p, 2), xt(i));
        b.add(cu(j, p, 1), xt1(i));
        b.add(cu(j, p, 2), xt2(i));
      } else {
        b.add(cu(j, p, 1), xf(i));
        b.add(cu(j, p, 2), xf(i));
        b.add(cu(j, p, 1), xf1(i));
        b.add(cu(j, p, 2), xf2(i));
      }
    }
  }

  std::vector<Habitat> habitats;
  for (int i = 0; i < N; ++i) {
    habitats.push_back(Habitat({xv(i), xt1(i), xf1(i)}));                       // H^1
    habitats.push_back(Habitat({xv(i), xt2(i), xf2(i)}));                       // H^2
    habitats.push_back(Habitat({xv(i), xt1(i), xt2(i), xf1(i), xf2(i)}));       // H_{x_i}
  }
  for (int j = 0; j < M; ++j) {
    for (int p = 1; p <= 3; ++p) {
      std::vector<VertexId> hs{cw(j)};
      for (int pp = 1; pp <= 3; ++pp)
        if (pp != p) {
          hs.push_back(cu(j, pp, 1));
          hs.push_back(cu(j, pp, 2));
        }
      habitats.push_back(Habitat(std::move(hs)));  // H_{C_j}^{-p}
    }
    for (int p = 1; p <= 3; ++p)
      for (int pp = p + 1; pp <= 3; ++pp)
        for (int l = 1; l <= 2; ++l)
          habitats.push_back(Habitat({cw(j), cu(j, p, l), cu(j, pp, l)}));  // H_{C_j,l}^{p,p'}
  }
  for (int j = 0; j < M; ++j) {
    const Sat22Clause& c = input.clauses[static_cast<size_t>(j)];
    for (int p = 1; p <= 3; ++p) {
      int i = c.var[static_cast<size_t>(p - 1)];
      if (c.positive[static_cast<size_t>(p - 1)]) {
        habitats.push_back(Habitat({cu(j, p, 1), cu(j, p, 2), xt(i), xt1(i), xt2(i)}));
        habitats.push_back(Habitat({cu(j, p, 1), xt(i), xt1(i)}));
        habitats.push_back(Habitat({cu(j, p, 2), xt(i), xt2(i)}));
      } else {
        habitats.push_back(Habitat({cu(j, p, 1), cu(j, p, 2), xf(i), xf1(i), xf2(i)}));
        habitats.push_back(Habitat({cu(j, p, 1), xf(i), xf1(i)}));
        habitats.push_back(Habitat({cu(j, p, 2), xf(i), xf2(i)}));
      }
    }
  }

  WitnessMap wm;
  wm.construction = Construction::H5D6;
  wm.mode = Mode::VertexTwoConnected;
  wm.source_n = N;
  wm.source_m = M;
  wm.clauses = input.clauses;
  std::vector<bool> is_choice(b.edges.size(), false);
  for (int i = 0; i < N; ++i) {
    EdgeId t = b.id(xt1(i), xt2(i));
    EdgeId f = b.id(xf1(i), xf2(i));
    is_choice[static_cast<size_t>(t)] = is_choice[static_cast<size_t>(f)] = true;
    wm.groups.push_back({group_name("var", i, "true"), {t}});
    wm.groups.push_back({group_name("var", i, "false"), {f}});
  }
  for (int j = 0; j < M; ++j) {
    std::vector<EdgeId> es;
    for (int p = 1; p <= 3; ++p) {
      EdgeId e = b.id(cu(j, p, 1), cu(j, p, 2));
      is_choice[static_cast<size_t>(e)] = true;
      es.push_back(e);
    }
    wm.groups.push_back({group_name("clause", j, "choice"), es});
  }
  std::vector<EdgeId> always;
  for (EdgeId e = 0; e < static_cast<EdgeId>(b.edges.size()); ++e)
    if (!is_choice[static_cast<size_t>(e)]) always.push_back(e);
  wm.groups.insert(wm.groups.begin(), {"always", always});

  Cost k = 27LL * N + 14LL * M;
  wm.budget = k;
  return {Instance::unit(Graph(b.n, b.edges), std::move(habitats), k,
                         Mode::VertexTwoConnected),
          std::move(wm)};
}

GeneratedInstance gen_h6d5(const HcvcInput& input, Mode mode) {
  input.validate(true);
  SourceLayout src = SourceLayout::from(input, true);
  const int n = src.n;
  if (n % 2 != 0) throw InputError("construction needs an even vertex count");

  Builder b;
  const int num_prime = static_cast<int>(src.hamilton.size());   // = n
  const int num_chord = static_cast<int>(src.chords.size());     // = n/2
  b.n = 6 * n + 2 * num_prime + 3 * num_chord;
  auto t1 = [&](int i) { return static_cast<VertexId>(6 * i + 0); };
  auto t2 = [&](int i) { return static_cast<VertexId>(6 * i + 1); };
  auto b1 = [&](int i) { return static_cast<VertexId>(6 * i + 2); };
  auto b2 = [&](int i) { return static_cast<VertexId>(6 * i + 3); };
  auto l1 = [&](int i) { return static_cast<VertexId>(6 * i + 4); };
  auto l2 = [&](int i) { return static_cast<VertexId>(6 * i + 5); };
  auto py = [&](int t) { return static_cast<VertexId>(6 * n + 2 * t); };      // y of X' tuple
  auto pz = [&](int t) { return static_cast<VertexId>(6 * n + 2 * t + 1); };  // z of X' tuple
  auto cy = [&](int t) { return static_cast<VertexId>(6 * n + 2 * num_prime + 3 * t); };
  auto cz = [&](int t) { return static_cast<VertexId>(6 * n + 2 * num_prime + 3 * t + 1); };
  auto cd = [&](int t) { return static_cast<VertexId>(6 * n + 2 * num_prime + 3 * t + 2); };

  for (int i = 0; i < n; ++i) {
    b.add(l2(i), t1(i));  // E_i'
    b.add(l1(i), b1(i));
    b.add(t1(i), b1(i));
    b.add(b2(i), t2(i));
    b.add(t1(i), t2(i));  // E_i^in
    b.add(b1(i), b2(i));
    b.add(l1(i), l2(i));
    b.add(l1(i), b2(i));  // E_i^out
    b.add(l2(i), t2(i));
  }
  for (int t = 0; t < num_prime; ++t) {
    auto [i, j] = src.hamilton[static_cast<size_t>(t)];
    b.add(py(t), pz(t));
    b.add(b1(i), l1(j));
    b.add(b1(i), pz(t));
    b.add(pz(t), l1(j));
    b.add(b2(i), l2(j));
    b.add(b2(i), py(t));
    b.add(py(t), l2(j));
  }
  for (int t = 0; t < num_chord; ++t) {
    auto [i, j] = src.chords[static_cast<size_t>(t)];
    b.add(t1(i), t2(j));
    b.add(t1(i), cy(t));
    b.add(cy(t), t2(j));
    b.add(t2(i), t1(j));
    b.add(t2(i), cz(t));
    b.add(cz(t), t1(j));
    b.add(cy(t), cz(t));
    b.add(cy(t), cd(t));
    b.add(cd(t), cz(t));
  }
  // connectors: z_{i,j} to y of X' tuple starting at i; y_{i,j} to y of the
  // X' tuple starting at j (the X' tuple starting at v has index v)
  for (int t = 0; t < num_chord; ++t) {
    auto [i, j] = src.chords[static_cast<size_t>(t)];
    b.add(cz(t), py(i));
    b.add(cy(t), py(j));
  }

  std::vector<Habitat> habitats;
  for (int i = 0; i < n; ++i)
    habitats.push_back(Habitat({t1(i), t2(i), b1(i), b2(i), l1(i), l2(i)}));  // H_i
  for (int t = 0; t < num_prime; ++t) {
    auto [i, j] = src.hamilton[static_cast<size_t>(t)];
    habitats.push_back(Habitat({b2(i), py(t), l2(j)}));                         // H^y
    habitats.push_back(Habitat({b1(i), pz(t), l1(j)}));                         // H^z
    habitats.push_back(Habitat({b2(i), py(t), l2(j), b1(i), pz(t), l1(j)}));    // H_{i,j}
    habitats.push_back(Habitat({py(t), pz(t), l1(j), b1(j), t1(j), l2(j)}));    // H_j^dagger
  }
  for (int t = 0; t < num_chord; ++t) {
    auto [i, j] = src.chords[static_cast<size_t>(t)];
    habitats.push_back(Habitat({t1(i), cy(t), t2(j)}));                         // H^y
    habitats.push_back(Habitat({t2(i), cz(t), t1(j)}));                         // H^z
    habitats.push_back(Habitat({cy(t), cz(t), cd(t)}));                         // H^d
    habitats.push_back(Habitat({t1(i), cy(t), t2(j), t2(i), cz(t), t1(j)}));    // H_{i,j}
    habitats.push_back(Habitat({t2(i), cz(t), py(i), b2(i)}));                  // H_i^ddagger
    habitats.push_back(Habitat({t2(j), cy(t), py(j), b2(j)}));                  // H_j^ddagger
  }

  WitnessMap wm;
  wm.construction = Construction::H6D5;
  wm.mode = mode;
  wm.source_n = n;
  wm.source_m = static_cast<int>(src.all.size());
  wm.source_order = src.order;
  wm.source_edges = src.all;
  std::vector<bool> is_choice(b.edges.size(), false);
  for (int i = 0; i < n; ++i) {
    std::vector<EdgeId> in = {b.id(t1(i), t2(i)), b.id(b1(i), b2(i)), b.id(l1(i), l2(i))};
    std::vector<EdgeId> out = {b.id(l1(i), b2(i)), b.id(l2(i), t2(i))};
    for (EdgeId e : in) is_choice[static_cast<size_t>(e)] = true;
    for (EdgeId e : out) is_choice[static_cast<size_t>(e)] = true;
    wm.groups.push_back({group_name("vertex", i, "in"), in});
    wm.groups.push_back({group_name("vertex", i, "out"), out});
  }
  std::vector<EdgeId> always;
  for (EdgeId e = 0; e < static_cast<EdgeId>(b.edges.size()); ++e)
    if (!is_choice[static_cast<size_t>(e)]) always.push_back(e);
  wm.groups.insert(wm.groups.begin(), {"always", always});

  Cost k = 7LL * n + (11LL * n) / 2 + 4LL * n + 2LL * n + input.p;
  wm.budget = k;
  return {Instance::unit(Graph(b.n, b.edges), std::move(habitats), k, mode), std::move(wm)};
}

GeneratedInstance gen_h22d3(const HcvcInput& input, Mode mode) {
  input.validate(true);
  SourceLayout src = SourceLayout::from(input, true);
  const int n = src.n;
  const int num_prime = static_cast<int>(src.hamilton.size());
  const int num_chord = static_cast<int>(src.chords.size());
  const int num_tuples = num_prime + num_chord;

  Builder b;
  b.n = 10 * n + 2 * num_tuples;
  auto vq = [&](int i, int c) { return static_cast<VertexId>(10 * i + 5 * c + 0); };
  auto vr = [&](int i, int c) { return static_cast<VertexId>(10 * i + 5 * c + 1); };
  auto vs = [&](int i, int c) { return static_cast<VertexId>(10 * i + 5 * c + 2); };
  auto vt = [&](int i, int c) { return static_cast<VertexId>(10 * i + 5 * c + 3); };
  auto vu = [&](int i, int c) { return static_cast<VertexId>(10 * i + 5 * c + 4); };
  auto xx = [&](int t, int c) { return static_cast<VertexId>(10 * n + 2 * t + c); };

  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 2; ++c) {
      b.add(vq(i, c), vr(i, c));
      b.add(vr(i, c), vs(i, c));
      b.add(vs(i, c), vt(i, c));
      b.add(vt(i, c), vu(i, c));
    }
    b.add(vs(i, 0), vs(i, 1));  // e_i^*
  }
  for (int t = 0; t < num_tuples; ++t) {
    bool prime = t < num_prime;
    auto [i, j] = prime ? src.hamilton[static_cast<size_t>(t)]
                        : src.chords[static_cast<size_t>(t - num_prime)];
    b.add(xx(t, 0), xx(t, 1));
    for (int c = 0; c < 2; ++c) {
      if (prime) {
        b.add(vq(i, c), xx(t, c));
        b.add(vq(j, c), xx(t, c));
        b.add(vu(i, c), vu(j, c));
      } else {
        b.add(vr(i, c), xx(t, c));
        b.add(vr(j, c), xx(t, c));
        b.add(vt(i, c), vt(j, c));
      }
    }
  }

  // X' tuple starting at i has index i; the one ending at i has index i-1 mod n
  auto tuple_start = [&](int i) { return i; };
  auto tuple_end = [&](int i) { return (i + n - 1) % n; };

  std::vector<Habitat> habitats;
  for (int t = 0; t < num_tuples; ++t) {
    bool prime = t < num_prime;
    auto [i, j] = prime ? src.hamilton[static_cast<size_t>(t)]
                        : src.chords[static_cast<size_t>(t - num_prime)];
    std::vector<VertexId> both;
    for (int c = 0; c < 2; ++c) {
      std::vector<VertexId> side;
      if (prime) {
        side = {vq(i, c), vr(i, c), vs(i, c), vt(i, c), vu(i, c),
                vq(j, c), vr(j, c), vs(j, c), vt(j, c), vu(j, c), xx(t, c)};
      } else {
        side = {vr(i, c), vs(i, c), vt(i, c), vr(j, c), vs(j, c), vt(j, c), xx(t, c)};
      }
      both.insert(both.end(), side.begin(), side.end());
      habitats.push_back(Habitat(std::move(side)));  // H_{i,j}^c
    }
    habitats.push_back(Habitat(std::move(both)));  // H_{i,j}
    if (!prime) {
      int te = tuple_end(i);
      habitats.push_back(Habitat({xx(te, 0), vq(i, 0), vr(i, 0), xx(t, 0), xx(t, 1), vr(i, 1),
                                  vq(i, 1), xx(te, 1)}));  // H_{i,j}^dagger
    }
  }
  for (int i = 0; i < n; ++i) {
    int te = tuple_end(i), ts = tuple_start(i);
    habitats.push_back(Habitat({xx(te, 0), vq(i, 0), xx(ts, 0), xx(ts, 1), vq(i, 1),
                                xx(te, 1)}));  // H_i^dagger
  }

  WitnessMap wm;
  wm.construction = Construction::H22D3;
  wm.mode = mode;
  wm.source_n = n;
  wm.source_m = num_tuples;
  wm.source_order = src.order;
  wm.source_edges = src.all;
  std::vector<bool> is_choice(b.edges.size(), false);
  for (int i = 0; i < n; ++i) {
    EdgeId e = b.id(vs(i, 0), vs(i, 1));
    is_choice[static_cast<size_t>(e)] = true;
    wm.groups.push_back({group_name("vertex", i, "choice"), {e}});
  }
  std::vector<EdgeId> always;
  for (EdgeId e = 0; e < static_cast<EdgeId>(b.edges.size()); ++e)
    if (!is_choice[static_cast<size_t>(e)]) always.push_back(e);
  wm.groups.insert(wm.groups.begin(), {"always", always});

  Cost k = static_cast<Cost>(b.edges.size()) - n + input.p;
  wm.budget = k;
  return {Instance::unit(Graph(b.n, b.edges), std::move(habitats), k, mode), std::move(wm)};
}

GeneratedInstance gen_h13d4(const HcvcInput& input, Mode mode) {
  input.validate(false);
  SourceLayout src = SourceLayout::from(input, false);
  const int n = src.n;
  const int m = static_cast<int>(src.all.size());
  const bool doubled = mode == Mode::EdgeTwoConnected;

  Builder b;
  b.n = 6 * n + (doubled ? 2 * m : m);
  auto vr = [&](int i, int c) { return static_cast<VertexId>(6 * i + 3 * c + 0); };
  auto vs = [&](int i, int c) { return static_cast<VertexId>(6 * i + 3 * c + 1); };
  auto vt = [&](int i, int c) { return static_cast<VertexId>(6 * i + 3 * c + 2); };
  auto xx = [&](int t, int c) {
    return static_cast<VertexId>(6 * n + (doubled ? 2 * t + c : t));
  };

  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 2; ++c) {
      b.add(vr(i, c), vs(i, c));
      b.add(vs(i, c), vt(i, c));
    }
    b.add(vs(i, 0), vs(i, 1));  // e_i^*
  }
  for (int t = 0; t < m; ++t) {
    auto [i, j] = src.all[static_cast<size_t>(t)];
    if (doubled) b.add(xx(t, 0), xx(t, 1));
    for (int c = 0; c < 2; ++c) {
      b.add(vr(i, c), xx(t, c));
      b.add(vr(j, c), xx(t, c));
      b.add(vt(i, c), vt(j, c));
    }
  }

  std::vector<Habitat> habitats;
  for (int t = 0; t < m; ++t) {
    auto [i, j] = src.all[static_cast<size_t>(t)];
    std::vector<VertexId> both;
    for (int c = 0; c < 2; ++c) {
      std::vector<VertexId> side = {vr(i, c), vs(i, c), vt(i, c),
                                    vr(j, c), vs(j, c), vt(j, c), xx(t, c)};
      both.insert(both.end(), side.begin(), side.end());
      habitats.push_back(Habitat(std::move(side)));  // H_{i,j}^c (7-cycle)
    }
    std::sort(both.begin(), both.end());
    both.erase(std::unique(both.begin(), both.end()), both.end());
    habitats.push_back(Habitat(std::move(both)));  // H_{i,j}
  }
  if (doubled) {
    // per source vertex, 6-cycle habitats over consecutive incident connector
    // pairs enforce every {x^a, x^b} edge
    std::vector<std::vector<int>> incident(static_cast<size_t>(n));
    for (int t = 0; t < m; ++t) {
      auto [i, j] = src.all[static_cast<size_t>(t)];
      incident[static_cast<size_t>(i)].push_back(t);
      incident[static_cast<size_t>(j)].push_back(t);
    }
    for (int i = 0; i < n; ++i) {
      const auto& ts = incident[static_cast<size_t>(i)];
      for (size_t a = 0; a + 1 < ts.size(); ++a)
        habitats.push_back(Habitat({xx(ts[a], 0), vr(i, 0), xx(ts[a + 1], 0), xx(ts[a + 1], 1),
                                    vr(i, 1), xx(ts[a], 1)}));
    }
  }

  WitnessMap wm;
  wm.construction = Construction::H13D4;
  wm.mode = mode;
  wm.source_n = n;
  wm.source_m = m;
  wm.source_order = src.order;
  wm.source_edges = src.all;
  std::vector<bool> is_choice(b.edges.size(), false);
  for (int i = 0; i < n; ++i) {
    EdgeId e = b.id(vs(i, 0), vs(i, 1));
    is_choice[static_cast<size_t>(e)] = true;
    wm.groups.push_back({group_name("vertex", i, "choice"), {e}});
  }
  std::vector<EdgeId> always;
  for (EdgeId e = 0; e < static_cast<EdgeId>(b.edges.size()); ++e)
    if (!is_choice[static_cast<size_t>(e)]) always.push_back(e);
  wm.groups.insert(wm.groups.begin(), {"always", always});

  Cost k = static_cast<Cost>(b.edges.size()) - n + input.p;
  wm.budget = k;
  return {Instance::unit(Graph(b.n, b.edges), std::move(habitats), k, mode), std::move(wm)};
}

GeneratedInstance generate(Construction c, const HcvcInput& input, Mode mode) {
  switch (c) {
    case Construction::H4D7: return gen_h4d7(input, mode);
    case Construction::H6D5: return gen_h6d5(input, mode);
    case Construction::H22D3: return gen_h22d3(input, mode);
    case Construction::H13D4: return gen_h13d4(input, mode);
    case Construction::H5D6: throw InputError("h5d6 generates from a CNF formula, not a graph");
  }
  throw InputError("unknown construction");
}

VertexCoverResult oracle_vertex_cover(const Graph& graph, int p) {
  const int n = graph.vertex_count();
  if (n > 20) throw CapacityError("vertex cover oracle limited to 20 vertices");
  if (p < 0) return {false, {}};
  VertexCoverResult best;
  int best_size = n + 1;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best_size) continue;
    bool covers = true;
    for (const Edge& e : graph.edges())
      if (!((mask >> e.u) & 1) && !((mask >> e.v) & 1)) {
        covers = false;
        break;
      }
    if (covers) {
      best_size = size;
      best.witness.clear();
      for (VertexId v = 0; v < n; ++v)
        if ((mask >> v) & 1) best.witness.push_back(v);
    }
  }
  best.yes = best_size <= p;
  if (!best.yes) best.witness.clear();
  return best;
}

int minimum_vertex_cover_size(const Graph& graph) {
  VertexCoverResult r = oracle_vertex_cover(graph, graph.vertex_count());
  return static_cast<int>(r.witness.size());
}

SatResult oracle_sat22(const Sat22Input& input) {
  input.validate();
  const int N = input.num_variables;
  if (N > 24) throw CapacityError("SAT oracle limited to 24 variables");
  for (uint32_t mask = 0; mask < (1u << N); ++mask) {
    bool ok = true;
    for (const Sat22Clause& c : input.clauses) {
      bool sat = false;
      for (int t = 0; t < 3; ++t) {
        bool val = (mask >> c.var[static_cast<size_t>(t)]) & 1;
        if (val == c.positive[static_cast<size_t>(t)]) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) {
      SatResult r;
      r.satisfiable = true;
      r.assignment.resize(static_cast<size_t>(N));
      for (int v = 0; v < N; ++v) r.assignment[static_cast<size_t>(v)] = (mask >> v) & 1;
      return r;
    }
  }
  return {};
}

namespace {

std::vector<bool> cover_by_position(const WitnessMap& map, std::span<const VertexId> cover) {
  std::vector<bool> in_cover(static_cast<size_t>(map.source_n), false);
  std::vector<int> pos(static_cast<size_t>(map.source_n), -1);
  for (int i = 0; i < map.source_n; ++i)
    pos[static_cast<size_t>(map.source_order[static_cast<size_t>(i)])] = i;
  for (VertexId v : cover) {
    if (v < 0 || v >= map.source_n) throw InputError("cover vertex out of range");
    in_cover[static_cast<size_t>(pos[static_cast<size_t>(v)])] = true;
  }
  for (auto [a, b] : map.source_edges)
    if (!in_cover[static_cast<size_t>(a)] && !in_cover[static_cast<size_t>(b)])
      throw InputError("witness is not a vertex cover");
  return in_cover;
}

void append(std::vector<EdgeId>& out, const std::vector<EdgeId>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

}  // namespace

std::vector<EdgeId> translate_witness(const WitnessMap& map, std::span<const VertexId> cover) {
  if (map.construction == Construction::H5D6)
    throw InputError("h5d6 takes a truth assignment, not a cover");
  std::vector<bool> in_cover = cover_by_position(map, cover);
  std::vector<EdgeId> out = *map.find("always");
  switch (map.construction) {
    case Construction::H4D7: {
      for (int i = 0; i < map.source_n; ++i) {
        const auto& ev = *map.find(group_name("vertex", i, "choice"));  // [v1v2, v2v4, v3v4]
        if (in_cover[static_cast<size_t>(i)]) {
          out.push_back(ev[0]);
          out.push_back(ev[2]);
        } else {
          out.push_back(ev[1]);
        }
      }
      for (int t = 0; t < map.source_m; ++t) {
        int i = map.source_edges[static_cast<size_t>(t)].first;
        const auto& et = *map.find(group_name("tuple", t, "choice"));  // [v4b, bv2, ub, wb]
        if (in_cover[static_cast<size_t>(i)]) {
          out.push_back(et[2]);
          out.push_back(et[1]);
        } else {
          out.push_back(et[3]);
          out.push_back(et[0]);
        }
      }
      break;
    }
    case Construction::H6D5: {
      for (int i = 0; i < map.source_n; ++i)
        append(out, *map.find(group_name("vertex", i,
                                         in_cover[static_cast<size_t>(i)] ? "in" : "out")));
      break;
    }
    case Construction::H22D3:
    case Construction::H13D4: {
      for (int i = 0; i < map.source_n; ++i)
        if (in_cover[static_cast<size_t>(i)])
          append(out, *map.find(group_name("vertex", i, "choice")));
      break;
    }
    case Construction::H5D6:
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeId> translate_witness(const WitnessMap& map, const std::vector<bool>& assignment) {
  if (map.construction != Construction::H5D6)
    throw InputError("only h5d6 takes a truth assignment");
  if (static_cast<int>(assignment.size()) != map.source_n)
    throw InputError("assignment size mismatch");
  std::vector<EdgeId> out = *map.find("always");
  for (int i = 0; i < map.source_n; ++i)
    append(out, *map.find(group_name("var", i, assignment[static_cast<size_t>(i)] ? "true"
                                                                                  : "false")));
  for (int j = 0; j < map.source_m; ++j) {
    const Sat22Clause& c = map.clauses[static_cast<size_t>(j)];
    int first_true = -1;
    for (int t = 0; t < 3; ++t)
      if (assignment[static_cast<size_t>(c.var[static_cast<size_t>(t)])] ==
          c.positive[static_cast<size_t>(t)]) {
        first_true = t;
        break;
      }
    if (first_true < 0) throw InputError("assignment does not satisfy clause " + std::to_string(j));
    const auto& es = *map.find(group_name("clause", j, "choice"));
    for (int t = 0; t < 3; ++t)
      if (t != first_true) out.push_back(es[static_cast<size_t>(t)]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> extract_assignment(const WitnessMap& map, std::span<const EdgeId> solution) {
  if (map.construction != Construction::H5D6)
    throw InputError("assignment extraction is defined for h5d6 only");
  std::vector<EdgeId> sel(solution.begin(), solution.end());
  std::sort(sel.begin(), sel.end());
  std::vector<bool> alpha(static_cast<size_t>(map.source_n), false);
  for (int i = 0; i < map.source_n; ++i) {
    EdgeId t = (*map.find(group_name("var", i, "true")))[0];
    alpha[static_cast<size_t>(i)] = std::binary_search(sel.begin(), sel.end(), t);
  }
  return alpha;
}

std::vector<VertexId> extract_cover(const WitnessMap& map, std::span<const EdgeId> solution) {
  if (map.construction != Construction::H22D3 && map.construction != Construction::H13D4)
    throw InputError("cover extraction is defined for h22d3 and h13d4 only");
  std::vector<EdgeId> sel(solution.begin(), solution.end());
  std::sort(sel.begin(), sel.end());
  std::vector<VertexId> cover;
  for (int i = 0; i < map.source_n; ++i) {
    EdgeId e = (*map.find(group_name("vertex", i, "choice")))[0];
    if (std::binary_search(sel.begin(), sel.end(), e))
      cover.push_back(map.source_order[static_cast<size_t>(i)]);
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

}  // namespace rgbp

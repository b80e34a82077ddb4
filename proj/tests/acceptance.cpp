// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances and expected values are pinned in code.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "dacodes/condense.hpp"
#include "dacodes/detect.hpp"
#include "dacodes/distance.hpp"
#include "dacodes/fixtures.hpp"
#include "dacodes/runner.hpp"

using namespace dacodes;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void report(int num, const std::string& what, bool ok, const std::string& detail = "") {
  std::cout << "criterion " << num << ": " << (ok ? "PASS" : "FAIL") << " - " << what;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

AnyonTheory g_cc2 = bilayer_color_code_theory();
AnyonTheory g_cc = color_code_theory();

// ---------------------------------------------------------------- 1
void criterion_automorphism_group() {
  Timer t;
  auto graph = build_graph(g_cc2, da_vertices(g_cc2), canonical_cc_sections);
  int base = *graph.find_vertex(vzz_condensation(g_cc2));
  SearchOptions opts;
  opts.edge_excluded = tabulated_unfold_filter(graph, base);
  auto found = search_sequences(graph, base, opts);
  std::set<AutomorphismName> names;
  for (const auto& [m, w] : found) names.insert(classify_automorphism(m));
  bool ok = names.size() == 72;
  // Closure under composition.
  for (const auto& a : names)
    for (const auto& b : names)
      if (!names.count(a.compose(b))) ok = false;
  // Structure: 36 plain elements covering all row/column permutation pairs,
  // 36 transposed ones, and the three tabulated generators generate all.
  int plain = 0, transposed = 0;
  std::set<std::pair<std::array<uint8_t, 3>, std::array<uint8_t, 3>>> plain_pairs;
  for (const auto& n : names) {
    if (n.transpose) {
      ++transposed;
    } else {
      ++plain;
      plain_pairs.insert({n.row_perm, n.col_perm});
    }
  }
  ok = ok && plain == 36 && transposed == 36 && plain_pairs.size() == 36;
  auto a = AutomorphismName::parse("(xr)(yg)(zb)");
  auto b = AutomorphismName::parse("(xb)(yg)(zr)");
  auto c = AutomorphismName::parse("(gb)");
  ok = ok && a && b && c;
  if (ok) {
    ok = a->compose(*a).is_identity() && b->compose(*b).is_identity() &&
         c->compose(*c).is_identity();
    std::set<std::string> gen{AutomorphismName{}.to_string()};
    std::vector<AutomorphismName> frontier{AutomorphismName{}};
    while (!frontier.empty()) {
      std::vector<AutomorphismName> next;
      for (const auto& g : frontier)
        for (const auto& h : {*a, *b, *c}) {
          auto x = h.compose(g);
          if (gen.insert(x.to_string()).second) next.push_back(x);
        }
      frontier = std::move(next);
    }
    ok = ok && gen.size() == 72;
  }
  report(1, "72 automorphisms close under composition as (S3xS3):Z2", ok,
         std::to_string(t.seconds()) + " s");
}

// ---------------------------------------------------------------- 2
void criterion_sequence_tables() {
  Timer t;
  auto graph = build_graph(g_cc2, da_vertices(g_cc2), canonical_cc_sections);
  int base = *graph.find_vertex(vzz_condensation(g_cc2));
  SearchOptions opts;
  opts.max_len = 5;
  opts.edge_excluded = tabulated_unfold_filter(graph, base);
  auto found = search_sequences(graph, base, opts);
  std::map<size_t, int> by_len;
  for (const auto& [m, w] : found)
    if (!classify_automorphism(m).is_identity()) by_len[w.min_length]++;
  bool counts_ok = by_len[3] == 10 && by_len[4] == 41 && by_len[5] == 20 && by_len[1] == 0 &&
                   by_len[2] == 0;

  Subspace vzz = vzz_condensation(g_cc2);
  ChildTheory child(g_cc2, vzz, *canonical_cc_sections(g_cc2, vzz));
  auto cat = load_catalog(slurp(std::string(DACODES_DATA_DIR) + "/sequences/aut_catalog.txt"),
                          g_cc2);
  bool rows_ok = cat.size() == 71;
  for (const auto& e : cat) {
    FpMat aut = sequence_automorphism(g_cc2, e.rounds, child);
    if (!e.expected_images || !matches_images(aut, *e.expected_images)) rows_ok = false;
  }
  report(2, "length<=5 search gives 10/41/20 and all 71 tabulated rows verify",
         counts_ok && rows_ok, std::to_string(t.seconds()) + " s");
}

// ---------------------------------------------------------------- 3
void criterion_single_cc_graph() {
  auto graph = build_graph(g_cc, single_cc_vertices(g_cc), canonical_cc_sections);
  bool ok = graph.num_vertices() == 9 && graph.num_edges() == 18;
  for (size_t i = 0; i < graph.num_vertices(); ++i) ok = ok && graph.degree(int(i)) == 4;

  FpMat swap2(2, 2, 2);
  swap2.at(0, 1) = swap2.at(1, 0) = 1;
  auto s = [&](const char* l) {
    return Subspace::span({parse_label_product(l, g_cc)}, 2, g_cc.dim());
  };
  ChildTheory base(g_cc, s("rx_1"), *canonical_cc_sections(g_cc, s("rx_1")));
  ok = ok && sequence_automorphism(
                 g_cc, {s("rx_1"), s("gy_1"), s("bz_1"), s("rx_1")}, base) == swap2;
  ok = ok && sequence_automorphism(g_cc,
                                   {s("rx_1"), s("gz_1"), s("bx_1"), s("rz_1"), s("gx_1"),
                                    s("bz_1"), s("rx_1")},
                                   base) == FpMat::identity(2, 2);

  // Winding parity law over all closed walks up to length 8.
  auto coords = [&](int v) {
    const auto& cond = graph.vertex(v).cond;
    for (int c = 0; c < 3; ++c)
      for (int f = 0; f < 3; ++f)
        if (cond ==
            Subspace::span({label_to_vector({Color(c), Flavor(f), 1}, g_cc)}, 2, g_cc.dim())) {
          int a = (c == 2) ? -1 : (c == 1 ? 0 : 1);
          int b = (f == 0) ? -1 : (f == 1 ? 0 : 1);
          return std::pair<int, int>((((a + b) * 2) % 3 + 3) % 3, (((a - b) * 2) % 3 + 3) % 3);
        }
    return std::pair<int, int>(-1, -1);
  };
  auto lift = [](int d) { return d == 2 ? -1 : d; };
  bool law_ok = true;
  std::function<void(int, int, int, size_t, const FpMat&)> rec =
      [&](int cur, int di, int dj, size_t len, const FpMat& m) {
        if (!law_ok) return;
        if (len > 0 && cur == 0) {
          int winding = di / 3 + dj / 3;
          bool em = m == swap2;
          if (em != ((winding % 2 + 2) % 2 == 1)) law_ok = false;
        }
        if (len == 8) return;
        auto [ci, cj] = coords(cur);
        for (const auto& e : graph.edges_from(cur)) {
          auto [ni, nj] = coords(e.to);
          rec(e.to, di + lift(((ni - ci) % 3 + 3) % 3), dj + lift(((nj - cj) % 3 + 3) % 3),
              len + 1, e.iso.mul(m));
        }
      };
  rec(0, 0, 0, 0, FpMat::identity(2, 2));
  ok = ok && law_ok;
  report(3, "single-CC graph is T3,3 with the winding-parity automorphism law", ok);
}

// ---------------------------------------------------------------- 4
void criterion_table1_gates() {
  Timer t;
  Fixture fx = builtin_fixture("torus36");
  auto bulk = builtin_bulk_sequences(g_cc2);
  Subspace vzz = vzz_condensation(g_cc2);
  ChildTheory base(g_cc2, vzz, *canonical_cc_sections(g_cc2, vzz));
  struct Case {
    const char* schedule;
    const char* gate;
  };
  const Case cases[] = {{"phi_xr_yg_zb", "(H1xH3).SWAP13"},
                        {"phi_zr_yg_xb", "(H2xH4).SWAP24"},
                        {"phi_gb", "CNOT12.CNOT34"}};
  bool ok = true;
  for (const auto& c : cases) {
    RunOptions opts;
    opts.start = StartPolicy::ReferenceISG;
    opts.reference_group = fx.reference_group;
    opts.initial_frame = fx.reference_frame;
    RunResult run = run_schedule(fx.lattice, fx.schedules.at(c.schedule), opts);
    if (!run.state.same_group(fx.reference_group)) ok = false;
    FpMat action = logical_action(*fx.reference_frame, run.frame_after.back(), run.state);
    if (torus_gate_name(action) != std::optional<std::string>(c.gate)) ok = false;
    FpMat aut = sequence_automorphism(g_cc2, bulk.at(c.schedule), base);
    if (!(predicted_torus_action(classify_automorphism(aut)) == action)) ok = false;
  }
  report(4, "Table-of-generators gates on the torus match the anyon layer", ok,
         std::to_string(t.seconds()) + " s");
}

// ---------------------------------------------------------------- 5
void criterion_vzz_isomorphisms() {
  Subspace vzz = vzz_condensation(g_cc2);
  ChildTheory ccc(g_cc2, vzz, *canonical_cc_sections(g_cc2, vzz));
  struct Row {
    const char* name;
    const char* a;
    const char* b;
  };
  const Row rows[] = {
      {"1", "rx_1", "bx_2"},        {"1", "ry_1", "by_2"},
      {"(xy)", "rx_1", "by_2"},     {"(xy)", "ry_1", "bx_2"},
      {"(rg)", "gx_1", "bx_2"},     {"(rg)", "gy_1", "by_2"},
      {"(xy)(rg)", "gx_1", "by_2"}, {"(xy)(rg)", "gy_1", "bx_2"},
      {"(gb)", "rx_1", "gx_2"},     {"(gb)", "ry_1", "gy_2"},
      {"(xy)(gb)", "rx_1", "gy_2"}, {"(xy)(gb)", "ry_1", "gx_2"},
      {"(rb)", "bx_1", "rx_2"},     {"(rb)", "by_1", "ry_2"},
      {"(xy)(rb)", "bx_1", "ry_2"}, {"(xy)(rb)", "by_1", "rx_2"},
      {"(rgb)", "gx_1", "rx_2"},    {"(rgb)", "gy_1", "ry_2"},
      {"(xy)(rgb)", "gx_1", "ry_2"}, {"(xy)(rgb)", "gy_1", "rx_2"},
      {"(rbg)", "bx_1", "gx_2"},    {"(rbg)", "by_1", "gy_2"},
      {"(xy)(rbg)", "bx_1", "gy_2"}, {"(xy)(rbg)", "by_1", "gx_2"},
  };
  bool ok = true;
  for (const auto& r : rows) {
    Subspace a = Subspace::span(
        {parse_label_product(r.a, g_cc2), parse_label_product(r.b, g_cc2)}, 2, g_cc2.dim());
    ChildTheory tc(g_cc2, a, *canonical_cc_sections(g_cc2, a));
    auto pair = check_reversible(g_cc2, a, vzz);
    auto iso = edge_isomorphism(g_cc2, pair, tc, ccc);
    if (classify_automorphism(iso.matrix).to_string() != r.name) ok = false;
  }
  report(5, "all tabulated interlayer-edge isomorphism names reproduce", ok);
}

// ---------------------------------------------------------------- 6
void criterion_isg_generation() {
  Fixture fx = builtin_fixture("torus36");
  StabilizerState ref(fx.lattice.num_qubits());
  for (const auto& g : fx.reference_group) ref.seed_generator(g);

  // Padding from vacuum: full topological rank first at round 5 (1-based).
  RunResult pad = run_schedule(fx.lattice, fx.schedules.at("padding"), RunOptions{});
  std::optional<size_t> full;
  for (size_t t = 0; t < pad.rank_after.size() && !full; ++t)
    if (pad.rank_after[t] == ref.rank()) full = t + 1;
  bool pad_ok = full == std::optional<size_t>(5);

  auto missing = [&](const char* name) {
    RunResult r = run_schedule(fx.lattice, fx.schedules.at(name), RunOptions{});
    std::set<std::string> out;
    for (const auto& pl : fx.lattice.plaquettes) {
      PauliOperator px(fx.lattice.num_qubits()), pz(fx.lattice.num_qubits());
      for (int v : pl.vertices) {
        px.set_pauli(fx.lattice.qubit(v, 0), 1);
        px.set_pauli(fx.lattice.qubit(v, 1), 1);
        pz.set_pauli(fx.lattice.qubit(v, 0), 3);
      }
      if (!r.state.in_group(px)) out.insert(std::string("X") + color_char(pl.color) + "(X1X2)");
      if (!r.state.in_group(pz)) out.insert(std::string("Z") + color_char(pl.color) + "(Z1)");
    }
    return out;
  };
  auto m1 = missing("phi_xr_yg_zb");
  auto m2 = missing("phi_zr_yg_xb");
  auto m3 = missing("phi_gb");
  bool gen_ok = m1 == std::set<std::string>{"Xb(X1X2)"} &&
                m2 == std::set<std::string>{"Xr(X1X2)"} &&
                m3 == std::set<std::string>{"Zr(Z1)"};

  bool pairs_ok = true;
  const char* gens[] = {"phi_xr_yg_zb", "phi_zr_yg_xb", "phi_gb"};
  for (const char* a : gens)
    for (const char* b : gens) {
      auto combo = ScheduleSpec::concatenate({fx.schedules.at(a), fx.schedules.at(b)});
      RunResult r = run_schedule(fx.lattice, combo, RunOptions{});
      StabilizerState st(fx.lattice.num_qubits());
      for (const auto& g : r.isg_after.back()) st.seed_generator(g);
      if (!st.same_group(fx.reference_group)) pairs_ok = false;
    }

  std::string detail;
  if (!gen_ok) {
    auto fmt = [](const std::set<std::string>& s) {
      std::string out;
      for (const auto& x : s) out += (out.empty() ? "" : "+") + x;
      return out;
    };
    detail = "exact missing families: " + fmt(m1) + " / " + fmt(m2) + " / " + fmt(m3) +
             "; see notes";
    g_notes.push_back(
        "criterion 6: the second and third generator sequences provably miss one plaquette "
        "family beyond their stated one (" +
        fmt(m2) + " and " + fmt(m3) +
        "), and generator pairs sharing a deficit cannot reach the full group; the padding "
        "claim and the first generator verify exactly. The extra deficits follow from span "
        "arguments on the measured operators (see the unit tests).");
  }
  report(6, "ISG generation: padding at round 5; per-generator deficits; generator pairs",
         pad_ok && gen_ok && pairs_ok, detail);
}

// ---------------------------------------------------------------- 7
void criterion_small_codes() {
  Timer t;
  bool ok = true;
  {
    Fixture fx = builtin_fixture("torus36");
    StabilizerState st(fx.lattice.num_qubits());
    for (const auto& g : fx.reference_group) st.seed_generator(g);
    auto d = code_distance(st, 4, fx.lattice.live_qubits(), 1);
    ok = ok && fx.lattice.num_qubits() == 36 && fx.lattice.num_qubits() - st.rank() == 4 &&
         d.distance == std::optional<int>(4);
  }
  {
    Fixture fx = builtin_fixture("rp2_32");
    StabilizerState st(fx.lattice.num_qubits());
    for (const auto& g : fx.reference_group) st.seed_generator(g);
    auto d = code_distance(st, 4, fx.lattice.live_qubits(), 1);
    ok = ok && fx.lattice.num_qubits() == 32 && fx.lattice.num_qubits() - st.rank() == 2 &&
         d.distance == std::optional<int>(4);
  }
  {
    Fixture fx = builtin_fixture("triangle24");
    for (const char* name : {"phi_rbg", "phi_rb"}) {
      std::vector<ScheduleSpec> blocks(4, fx.schedules.at(name));
      RunResult run =
          run_schedule(fx.lattice, ScheduleSpec::concatenate(blocks), RunOptions{});
      StabilizerState st(fx.lattice.num_qubits());
      for (const auto& g : run.isg_after.back()) st.seed_generator(g);
      auto d = code_distance(st, 3, fx.lattice.live_qubits(), 1);
      ok = ok && fx.lattice.live_qubits().size() == 24 &&
           fx.lattice.num_qubits() - st.rank() == 1 && d.distance == std::optional<int>(3);
    }
  }
  report(7, "small codes are [[36,4,4]], [[32,2,4]] and [[24,1,3]] (both triangle schedules)",
         ok, std::to_string(t.seconds()) + " s single-threaded");
}

// ---------------------------------------------------------------- 8
void criterion_correctability() {
  Timer t;
  Fixture fx = builtin_fixture("torus36");
  const auto pad = fx.schedules.at("padding");
  RunOptions opts;
  opts.start = StartPolicy::ReferenceISG;
  opts.reference_group = fx.reference_group;
  opts.initial_frame = fx.reference_frame;

  bool ok = true;
  for (const char* block : {"pad2", "padded_xr_yg_zb", "padded_zr_yg_xb", "padded_gb"}) {
    ScheduleSpec full = ScheduleSpec::concatenate({pad, fx.schedules.at(block), pad});
    size_t margin = pad.rounds.size() - 1;
    size_t window_end = margin + fx.schedules.at(block).rounds.size() - 1;
    RunResult run = run_schedule(fx.lattice, full, opts);
    DetectorSet dets = extract_detectors(run, fx.lattice);
    auto mem = membranes(run);
    auto rep = verify_correctability(dets, run, fx.lattice, mem, margin, window_end);
    if (!rep.violations.empty() || rep.n_columns == 0) ok = false;
  }

  // Spot examples on the periodic padding.
  {
    std::vector<ScheduleSpec> blocks(4, pad);
    RunResult run = run_schedule(fx.lattice, ScheduleSpec::concatenate(blocks), opts);
    DetectorSet dets = extract_detectors(run, fx.lattice);
    auto mem = membranes(run);
    size_t q = fx.lattice.qubit(0, 0);
    auto colors_of = [&](const BitVec& syn) {
      std::multiset<int> out;
      for (size_t i : syn.ones())
        out.insert(dets.detectors[i].color ? int(*dets.detectors[i].color) : -1);
      return out;
    };
    auto s1 = colors_of(syndrome(dets, run, {{q, 6, Flavor::X}}));
    auto s5 = colors_of(syndrome(dets, run, {{q, 10, Flavor::Z}}));
    ok = ok && s1 == std::multiset<int>{int(Color::G), int(Color::B)};
    ok = ok && s5 == std::multiset<int>{int(Color::R), int(Color::R), int(Color::G),
                                        int(Color::G), int(Color::B)};
    std::vector<ErrorLocation> straddle = {{q, 9, Flavor::X}, {q, 11, Flavor::X}};
    ok = ok && !syndrome(dets, run, straddle).any() && !is_consequential(mem, straddle);
  }
  report(8, "padded schedules locate every single error; spot syndromes match", ok,
         std::to_string(t.seconds()) + " s");
}

// ---------------------------------------------------------------- 9
void criterion_honeycomb() {
  Fixture fx = builtin_fixture("honeycomb33");
  std::vector<ScheduleSpec> blocks(5, fx.schedules.at("period"));
  RunResult run = run_schedule(fx.lattice, ScheduleSpec::concatenate(blocks), RunOptions{});
  DetectorSet dets = extract_detectors(run, fx.lattice);
  bool ok = !dets.detectors.empty();
  for (const auto& d : dets.detectors) {
    if (!d.color) continue;
    bool shape = d.events.size() == 2 && d.events[0].flavor == d.events[1].flavor &&
                 d.events[1].round - d.events[0].round == 3 &&
                 d.last_round - d.first_round == 4;
    if (!shape) ok = false;
  }

  // One period implements the charge-flux automorphism on the logicals.
  ScheduleSpec warm = ScheduleSpec::concatenate(blocks);
  warm.rounds.push_back(fx.schedules.at("period").rounds[0]);
  RunResult w = run_schedule(fx.lattice, warm, RunOptions{});
  LogicalFrame frame;
  auto str = [&](Color c, const char* fl, int dir) {
    return torus_string(fx.lattice, 3, 3, c, fl, dir);
  };
  frame.pairs.push_back({str(Color::G, "x", 1), str(Color::R, "y", 0), "q1"});
  frame.pairs.push_back({str(Color::G, "x", 0), str(Color::R, "y", 1), "q2"});
  RunOptions opts;
  opts.start = StartPolicy::ReferenceISG;
  opts.reference_group = w.isg_after.back();
  opts.initial_frame = frame;
  ScheduleSpec period;
  period.rounds = {fx.schedules.at("period").rounds[1], fx.schedules.at("period").rounds[2],
                   fx.schedules.at("period").rounds[0]};
  RunResult run2 = run_schedule(fx.lattice, period, opts);
  FpMat em = symplectic_hadamard(2, 0).mul(symplectic_hadamard(2, 1)).mul(
      symplectic_swap(2, 0, 1));
  ok = ok && logical_action(frame, run2.frame_after.back(), run2.state) == em;
  report(9, "honeycomb detectors have the two-inference shape; period swaps charge and flux",
         ok);
}

// ---------------------------------------------------------------- 10
void criterion_update_oracle() {
  Timer t;
  std::mt19937 rng(20260810);
  auto random_condensible = [&](const AnyonTheory& th, size_t target) {
    std::vector<AnyonVector> gens;
    for (int attempt = 0; attempt < 200 && gens.size() < target; ++attempt) {
      AnyonVector v(th.dim());
      for (auto& x : v) x = uint8_t(rng() & 1);
      if (th.self_statistics(v) != 0 || fp_is_zero(v)) continue;
      bool okv = true;
      for (const auto& g : gens)
        if (th.braid(g, v) != 0) okv = false;
      if (!okv) continue;
      gens.push_back(v);
      if (Subspace::span(gens, 2, th.dim()).rank() != gens.size()) gens.pop_back();
    }
    return Subspace::span(gens, 2, th.dim());
  };
  // Brute-force shared-representative existence.
  std::function<std::vector<Subspace>(const Subspace&, size_t)> subspaces_of =
      [&](const Subspace& w, size_t k) {
        std::vector<Subspace> out;
        if (k == 0) {
          out.push_back(Subspace::zero(2, w.ambient_dim()));
          return out;
        }
        std::set<std::string> seen;
        auto elems = w.elements();
        std::vector<AnyonVector> stack;
        std::function<void(size_t)> rec = [&](size_t start) {
          Subspace cur = Subspace::span(stack, 2, w.ambient_dim());
          if (cur.rank() == k) {
            if (seen.insert(cur.to_string()).second) out.push_back(cur);
            return;
          }
          for (size_t i = start; i < elems.size(); ++i) {
            if (fp_is_zero(elems[i]) || cur.contains(elems[i])) continue;
            stack.push_back(elems[i]);
            rec(i + 1);
            stack.pop_back();
          }
        };
        rec(0);
        return out;
      };

  bool ok = true;
  int done = 0;
  while (done < 10000 && ok) {
    int n = 2 + int(rng() % 2);
    AnyonTheory th(2, n);
    size_t dim_a = 1 + rng() % (n - 1);
    Subspace a1 = random_condensible(th, dim_a);
    Subspace a2 = random_condensible(th, dim_a);
    if (a1.rank() != dim_a || a2.rank() != dim_a) continue;
    ++done;
    bool rev = is_reversible(th, a1, a2);
    // Oracle: exists a complete shared set of representatives.
    Subspace p1 = orthogonal_complement(th, a1);
    Subspace p2 = orthogonal_complement(th, a2);
    Subspace w = p1.intersect(p2);
    bool shared = false;
    for (const auto& r : subspaces_of(w, th.dim() - 2 * dim_a))
      if (r.sum(a1).rank() == p1.rank() && r.sum(a2).rank() == p2.rank()) shared = true;
    if (rev != shared) ok = false;
    if (!rev) continue;
    auto pair = check_reversible(th, a1, a2);
    auto p1e = p1.elements();
    AnyonVector l = p1e[rng() % p1e.size()];
    AnyonVector lt = update_representative(th, pair, l);
    // The full coset intersection equals lt + Q.
    std::set<std::string> expected, got;
    for (const auto& q : pair.q.elements()) expected.insert(fp_to_string(fp_add(lt, q, 2)));
    for (const auto& a : a1.elements()) {
      AnyonVector cand = fp_add(l, a, 2);
      if (p2.contains(cand)) got.insert(fp_to_string(cand));
    }
    if (expected != got) ok = false;
    if (pair.q.rank() == 0 && got.size() != 1) ok = false;
  }
  report(10, "update formula matches the coset oracle on 10^4 random reversible pairs", ok,
         std::to_string(t.seconds()) + " s");
}

// ---------------------------------------------------------------- 11
void criterion_color_triangle_sequences() {
  auto bulk = builtin_bulk_sequences(g_cc2);
  Subspace vzz = vzz_condensation(g_cc2);
  ChildTheory child(g_cc2, vzz, *canonical_cc_sections(g_cc2, vzz));

  AutomorphismName xz, xyz;
  xz.col_perm = {2, 1, 0};
  xyz.col_perm = {1, 2, 0};  // x->y->z->x
  FpMat a_xz = sequence_automorphism(g_cc2, bulk.at("phi_xz"), child);
  FpMat a_xyz = sequence_automorphism(g_cc2, bulk.at("phi_xyz"), child);
  bool ok = classify_automorphism(a_xz) == xz;
  AutomorphismName got = classify_automorphism(a_xyz);
  ok = ok && (got == xyz || got == xyz.inverse());
  ok = ok && got.to_string() == "(xyz)";

  // Color boundaries: each row Lagrangian returns to its own class.
  for (int c = 0; c < 3 && ok; ++c) {
    std::vector<FpVec> gens = {magic_square_vec(Color(c), Flavor::X),
                               magic_square_vec(Color(c), Flavor::Z)};
    Subspace b0 = Subspace::span(gens, 2, 4);
    for (const char* seq : {"phi_xz", "phi_xyz"}) {
      auto bdry = boundary_sequence(g_cc2, bulk.at(seq), child, b0);
      std::vector<FpVec> final_coords;
      for (const auto& r : bdry.back().basis_rows()) final_coords.push_back(child.kappa(r));
      if (!(Subspace::span(final_coords, 2, 4) == b0)) ok = false;
      for (size_t t = 0; t < bdry.size(); ++t)
        if (!is_lagrangian(g_cc2, bdry[t].sum(bulk.at(seq)[t]))) ok = false;
    }
  }
  report(11, "color-boundary bulk sequences give (xz) and (xyz) and preserve each boundary",
         ok);
}

}  // namespace

int main() {
  criterion_automorphism_group();
  criterion_sequence_tables();
  criterion_single_cc_graph();
  criterion_table1_gates();
  criterion_vzz_isomorphisms();
  criterion_isg_generation();
  criterion_small_codes();
  criterion_correctability();
  criterion_honeycomb();
  criterion_update_oracle();
  criterion_color_triangle_sequences();

  if (!g_notes.empty()) {
    std::cout << "\nnotes:\n";
    for (const auto& n : g_notes) std::cout << "  - " << n << "\n";
  }
  std::cout << "\n" << (11 - g_failures) << "/11 criteria passed\n";
  return g_failures == 0 ? 0 : 1;
}

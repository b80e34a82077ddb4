#include "doctest.h"

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "dacodes/condense.hpp"

using namespace dacodes;

namespace {

AnyonVector lbl(const AnyonTheory& th, const std::string& s) {
  return parse_label_product(s, th);
}

Subspace sp(const AnyonTheory& th, std::initializer_list<const char*> labels) {
  std::vector<AnyonVector> gens;
  for (const char* s : labels) gens.push_back(lbl(th, s));
  return Subspace::span(gens, th.p(), th.dim());
}

// Random condensible subspace built by greedy trials.
Subspace random_condensible(const AnyonTheory& th, std::mt19937& rng, size_t target_dim) {
  std::vector<AnyonVector> gens;
  for (int attempt = 0; attempt < 200 && gens.size() < target_dim; ++attempt) {
    AnyonVector v(th.dim());
    for (auto& x : v) x = uint8_t(rng() % th.p());
    if (th.self_statistics(v) != 0 || fp_is_zero(v)) continue;
    bool ok = true;
    for (const auto& g : gens)
      if (th.braid(g, v) != 0) ok = false;
    if (!ok) continue;
    gens.push_back(v);
    if (Subspace::span(gens, th.p(), th.dim()).rank() != gens.size()) gens.pop_back();
  }
  return Subspace::span(gens, th.p(), th.dim());
}

// All subspaces of the span of `space` with the given dimension (p=2 only).
std::vector<Subspace> all_subspaces_of(const Subspace& space, size_t k) {
  std::vector<Subspace> out;
  if (k == 0) {
    out.push_back(Subspace::zero(2, space.ambient_dim()));
    return out;
  }
  std::set<std::string> seen;
  auto elems = space.elements();
  std::vector<AnyonVector> stack;
  std::function<void(size_t)> rec = [&](size_t start) {
    Subspace cur = Subspace::span(stack, 2, space.ambient_dim());
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
}

// Brute-force oracle: a shared complete set of representatives exists.
bool shared_representatives_exist(const AnyonTheory& th, const Subspace& a1, const Subspace& a2) {
  Subspace p1 = orthogonal_complement(th, a1);
  Subspace p2 = orthogonal_complement(th, a2);
  Subspace w = p1.intersect(p2);
  size_t k = th.dim() - 2 * a1.rank();
  for (const auto& r : all_subspaces_of(w, k)) {
    if (r.sum(a1).rank() == p1.rank() && r.sum(a2).rank() == p2.rank()) return true;
  }
  return false;
}

const std::string table1_seq_1 =  // transpose automorphism, 5 transitions
    "VZZ\nrx_1; bx_2\ngy_1; bx_2\nbz_1; gz_2\nrx_1; bx_2\nVZZ\n";
const std::string table1_seq_2 =
    "VZZ\nrx_1; bx_2\nrx_1; ry_2\nbz_1; gz_2\nrx_1; bx_2\nVZZ\n";
const std::string table1_seq_3 =  // color swap (gb), 4 transitions
    "VZZ\nrx_1; bx_2\nbz_1; ry_2\nrx_1; gx_2\nVZZ\n";
const std::string padding_seq =  // honeycomb cycle in each layer
    "VZZ\nrx_1; bx_2\ngy_1; ry_2\nbz_1; gz_2\nrx_1; bx_2\nVZZ\n";

}  // namespace

TEST_CASE("reversibility basics") {
  AnyonTheory cc = color_code_theory();
  // Honeycomb step: braid(rx, gy) = 1.
  CHECK(is_reversible(cc, sp(cc, {"rx_1"}), sp(cc, {"gy_1"})));
  // Same row: braid(rx, ry) = 0, beta singular.
  CHECK(!is_reversible(cc, sp(cc, {"rx_1"}), sp(cc, {"ry_1"})));
  CHECK(!is_reversible(cc, sp(cc, {"rx_1"}), sp(cc, {"rz_1"})));
  // A1 == A2: Q is everything, empty beta.
  auto pair = check_reversible(cc, sp(cc, {"rx_1"}), sp(cc, {"rx_1"}));
  CHECK(pair.n_qbar == 0);
  AnyonVector l = lbl(cc, "ry_1");
  CHECK(update_representative(cc, pair, l) == l);
  // Dimension mismatch.
  CHECK_THROWS_AS(check_reversible(cc, sp(cc, {"rx_1"}), sp(cc, {"rx_1", "gx_1"})),
                  NotReversible);
}

TEST_CASE("update moves bx_1*bx_2 to bx_1 across the phi_gb round-1 pair") {
  AnyonTheory cc2 = bilayer_color_code_theory();
  auto pair = check_reversible(cc2, sp(cc2, {"rx_1", "bx_2"}), sp(cc2, {"bz_1", "ry_2"}));
  AnyonVector l = lbl(cc2, "bx_1*bx_2");
  CHECK(update_representative(cc2, pair, l) == lbl(cc2, "bx_1"));
  // Already compatible representative is unchanged.
  AnyonVector rz1 = lbl(cc2, "rz_1");
  auto pair2 = check_reversible(cc2, vzz_condensation(cc2), sp(cc2, {"rx_1", "gx_2"}));
  CHECK(update_representative(cc2, pair2, rz1) == rz1);
  // Error when L is confined (gz_1 braids with rx_1).
  CHECK_THROWS(update_representative(cc2, pair, lbl(cc2, "gz_1")));
}

TEST_CASE("update formula vs coset brute force and reversibility oracle") {
  std::mt19937 rng(42);
  int n_pairs = 0, n_reversible = 0;
  while (n_pairs < 2000) {
    int n = 2 + int(rng() % 2);  // N in {2,3}
    AnyonTheory th(2, n);
    size_t dim_a = 1 + rng() % (n - 1);
    Subspace a1 = random_condensible(th, rng, dim_a);
    Subspace a2 = random_condensible(th, rng, dim_a);
    if (a1.rank() != dim_a || a2.rank() != dim_a) continue;
    ++n_pairs;
    bool rev = is_reversible(th, a1, a2);
    CHECK(rev == shared_representatives_exist(th, a1, a2));
    if (!rev) continue;
    ++n_reversible;
    auto pair = check_reversible(th, a1, a2);
    Subspace p1 = orthogonal_complement(th, a1);
    Subspace p2 = orthogonal_complement(th, a2);
    // Random representative L in A1^perp.
    auto p1e = p1.elements();
    AnyonVector l = p1e[rng() % p1e.size()];
    AnyonVector lt = update_representative(th, pair, l);
    // The fused-away part lies in A1 and the result is in both perps.
    CHECK(a1.contains(fp_add(l, lt, 2)));
    CHECK(p2.contains(lt));
    // Coset oracle: candidates in (L + A1) cap A2^perp form lt + Q exactly.
    std::set<std::string> expected, got;
    for (const auto& q : pair.q.elements()) expected.insert(fp_to_string(fp_add(lt, q, 2)));
    for (const auto& a : a1.elements()) {
      AnyonVector cand = fp_add(l, a, 2);
      if (p2.contains(cand)) got.insert(fp_to_string(cand));
    }
    CHECK(expected == got);
    if (pair.q.rank() == 0) CHECK(got.size() == 1);  // unique coset element
  }
  CHECK(n_reversible > 200);
}

TEST_CASE("Table I generator sequences classify correctly") {
  AnyonTheory cc2 = bilayer_color_code_theory();
  Subspace vzz = vzz_condensation(cc2);
  ChildTheory base(cc2, vzz, *canonical_cc_sections(cc2, vzz));

  auto run = [&](const std::string& text) {
    auto seq = load_sequence(text, cc2);
    return classify_automorphism(sequence_automorphism(cc2, seq, base));
  };

  AutomorphismName t1 = run(table1_seq_1);
  CHECK(t1.to_string() == "(xr)(yg)(zb)");
  AutomorphismName t2 = run(table1_seq_2);
  CHECK(t2.to_string() == "(xb)(yg)(zr)");  // same symmetry the tables call (zr)(yg)(xb)
  AutomorphismName t3 = run(table1_seq_3);
  CHECK(!t3.transpose);
  CHECK(t3.row_perm == std::array<uint8_t, 3>{0, 2, 1});  // g <-> b
  CHECK(t3.col_perm == std::array<uint8_t, 3>{0, 1, 2});
  CHECK(t3.to_string() == "(gb)");

  // phi_gb in toric-code language: m1<->mm, 1e<->ee.
  FpMat m = t3.to_matrix();
  FpVec m1 = magic_square_vec(Color::B, Flavor::X);  // bx = m1
  FpVec mm = magic_square_vec(Color::G, Flavor::X);  // gx = mm
  CHECK(m.mul_vec(m1) == mm);

  AutomorphismName pad = run(padding_seq);
  CHECK(pad.to_string() == "(xz)(rb)");
  CHECK(pad.compose(pad).is_identity());

  // The three generators generate all 72 automorphisms.
  std::set<std::string> group{AutomorphismName{}.to_string()};
  std::vector<AutomorphismName> frontier{AutomorphismName{}};
  std::vector<AutomorphismName> gens{t1, t2, t3};
  while (!frontier.empty()) {
    std::vector<AutomorphismName> next;
    for (const auto& g : frontier)
      for (const auto& h : gens) {
        AutomorphismName c = h.compose(g);
        if (group.insert(c.to_string()).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  CHECK(group.size() == 72);
}

TEST_CASE("automorphism names round trip and compose") {
  std::vector<std::string> names = {"1", "(gb)", "(xy)", "(xz)(rb)", "(xr)(yg)(zb)", "(rgb)",
                                    "(xyz)(rgb)", "(xb)(yg)(zr)"};
  for (const auto& s : names) {
    auto n = AutomorphismName::parse(s);
    REQUIRE(n.has_value());
    CHECK(n->to_string() == s);
    CHECK(classify_automorphism(n->to_matrix()) == *n);
    CHECK(n->compose(n->inverse()).is_identity());
    CHECK(n->inverse().compose(*n).is_identity());
  }
  // compose consistency with matrices
  std::mt19937 rng(3);
  auto rand_name = [&]() {
    AutomorphismName n;
    std::array<uint8_t, 3> a{0, 1, 2}, b{0, 1, 2};
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    n.row_perm = a;
    n.col_perm = b;
    n.transpose = rng() & 1;
    return n;
  };
  for (int i = 0; i < 100; ++i) {
    AutomorphismName x = rand_name(), y = rand_name();
    CHECK(x.compose(y).to_matrix() == x.to_matrix().mul(y.to_matrix()));
  }
}

TEST_CASE("single color code condensation graph is T33") {
  AnyonTheory cc = color_code_theory();
  auto graph = build_graph(cc, single_cc_vertices(cc), canonical_cc_sections);
  CHECK(graph.num_vertices() == 9);
  CHECK(graph.num_edges() == 18);
  for (int i = 0; i < 9; ++i) CHECK(graph.degree(i) == 4);

  // Every edge isomorphism with the canonical sections swaps e and m.
  FpMat swap2(2, 2, 2);
  swap2.at(0, 1) = 1;
  swap2.at(1, 0) = 1;
  for (int i = 0; i < 9; ++i)
    for (const auto& e : graph.edges_from(i)) CHECK(e.iso == swap2);

  // Honeycomb cycle rx -> gy -> bz -> rx gives the e-m automorphism.
  std::vector<Subspace> hc = {sp(cc, {"rx_1"}), sp(cc, {"gy_1"}), sp(cc, {"bz_1"}),
                              sp(cc, {"rx_1"})};
  ChildTheory base(cc, hc[0], *canonical_cc_sections(cc, hc[0]));
  CHECK(sequence_automorphism(cc, hc, base) == swap2);

  // CSS honeycomb cycle wraps both directions: trivial automorphism.
  std::vector<Subspace> css = {sp(cc, {"rx_1"}), sp(cc, {"gz_1"}), sp(cc, {"bx_1"}),
                               sp(cc, {"rz_1"}), sp(cc, {"gx_1"}), sp(cc, {"bz_1"}),
                               sp(cc, {"rx_1"})};
  CHECK(sequence_automorphism(cc, css, base) == FpMat::identity(2, 2));
}

TEST_CASE("T33 winding parity law for cycles up to length 8") {
  AnyonTheory cc = color_code_theory();
  auto graph = build_graph(cc, single_cc_vertices(cc), canonical_cc_sections);
  // Grid coordinates (i, j) from the fermion-square parametrization:
  // color index a = (b,g,r) at i+j = (-1,0,1), flavor index at i-j.
  auto coords = [&](int v) {
    const auto& s = graph.vertex(v).cond;
    for (int c = 0; c < 3; ++c)
      for (int f = 0; f < 3; ++f)
        if (s == Subspace::span({label_to_vector({Color(c), Flavor(f), 1}, cc)}, 2, cc.dim())) {
          int a = (c == 2) ? -1 : (c == 1 ? 0 : 1);  // b,g,r
          int b = (f == 0) ? -1 : (f == 1 ? 0 : 1);  // x,y,z
          int i = (((a + b) * 2) % 3 + 3) % 3;
          int j = (((a - b) * 2) % 3 + 3) % 3;
          return std::pair<int, int>(i, j);
        }
    FAIL("vertex is not a single boson");
    return std::pair<int, int>(0, 0);
  };
  auto lift = [](int d) { return d == 2 ? -1 : d; };  // mod-3 step to {-1,0,1}

  FpMat swap2(2, 2, 2);
  swap2.at(0, 1) = 1;
  swap2.at(1, 0) = 1;

  int base = 0;
  long n_checked = 0;
  // DFS over closed walks of length <= 8 tracking winding and isomorphism.
  std::function<void(int, int, int, size_t, const FpMat&)> rec = [&](int cur, int di, int dj,
                                                                     size_t len, const FpMat& m) {
    if (len > 0 && cur == base) {
      REQUIRE(di % 3 == 0);
      REQUIRE(dj % 3 == 0);
      int winding = di / 3 + dj / 3;
      bool em = (m == swap2);
      bool id = (m == FpMat::identity(2, 2));
      REQUIRE((em || id));
      REQUIRE(em == (((winding % 2) + 2) % 2 == 1));
      ++n_checked;
    }
    if (len == 8) return;
    auto [ci, cj] = coords(cur);
    for (const auto& e : graph.edges_from(cur)) {
      auto [ni, nj] = coords(e.to);
      int si = lift(((ni - ci) % 3 + 3) % 3);
      int sj = lift(((nj - cj) % 3 + 3) % 3);
      REQUIRE(std::abs(si) + std::abs(sj) == 1);
      rec(e.to, di + si, dj + sj, len + 1, e.iso.mul(m));
    }
  };
  rec(base, 0, 0, 0, FpMat::identity(2, 2));
  CHECK(n_checked > 1000);
}

TEST_CASE("gauge change conjugates edge isomorphisms but fixes cycle classes") {
  AnyonTheory cc = color_code_theory();
  auto pinned = build_graph(cc, single_cc_vertices(cc), canonical_cc_sections);
  auto plain = build_graph(cc, single_cc_vertices(cc));
  CHECK(plain.num_edges() == pinned.num_edges());
  // Cycle automorphisms agree up to conjugacy; for 2x2 maps over F2 being
  // the identity is the class invariant.
  auto res_pinned = search_sequences(pinned, 0, 5);
  auto res_plain = search_sequences(plain, 0, 5);
  auto count_id = [](const std::map<FpMat, WalkResult, FpMatLess>& r) {
    std::map<size_t, int> by_len;
    for (const auto& [m, w] : r)
      if (m == FpMat::identity(2, 2)) by_len[w.min_length]++;
    return by_len;
  };
  CHECK(count_id(res_pinned) == count_id(res_plain));
  CHECK(res_pinned.size() == res_plain.size());
}

TEST_CASE("DA condensation graph structure") {
  AnyonTheory cc2 = bilayer_color_code_theory();
  auto graph = build_graph(cc2, da_vertices(cc2), canonical_cc_sections);
  CHECK(graph.num_vertices() == 82);
  int vzz = int(graph.num_vertices()) - 1;
  CHECK(graph.vertex(vzz).cond == vzz_condensation(cc2));
  CHECK(graph.degree(vzz) == 24);
  // Product vertices: 8 same-layer moves + 16 both-layer moves, plus the
  // interlayer vertex when colors differ and both flavors are x or y.
  for (int v = 0; v < 81; ++v) {
    int d = graph.degree(v);
    CHECK((d == 24 || d == 25));
  }

  // Contractible 4-cycles within the product part are trivial automorphisms.
  std::vector<Subspace> cyc = {sp(cc2, {"rx_1", "bx_2"}), sp(cc2, {"gy_1", "bx_2"}),
                               sp(cc2, {"gy_1", "ry_2"}), sp(cc2, {"rx_1", "ry_2"}),
                               sp(cc2, {"rx_1", "bx_2"})};
  ChildTheory base(cc2, cyc[0], *canonical_cc_sections(cc2, cyc[0]));
  CHECK(sequence_automorphism(cc2, cyc, base) == FpMat::identity(4, 2));
}

TEST_CASE("edge isomorphisms at VZZ match the tabulated names") {
  AnyonTheory cc2 = bilayer_color_code_theory();
  Subspace vzz = vzz_condensation(cc2);
  ChildTheory ccc(cc2, vzz, *canonical_cc_sections(cc2, vzz));

  // The tabulated names label the isomorphism pointing into the interlayer
  // vertex (toric-code child -> effective color code), which is also the
  // direction that closes every cycle automorphism.
  auto name_of = [&](const char* l1, const char* l2) {
    Subspace a = sp(cc2, {l1, l2});
    ChildTheory tc(cc2, a, *canonical_cc_sections(cc2, a));
    auto pair = check_reversible(cc2, a, vzz);
    auto iso = edge_isomorphism(cc2, pair, tc, ccc);
    return classify_automorphism(iso.matrix).to_string();
  };

  // 24 reversible neighbors of the interlayer vertex, 2 per isomorphism.
  CHECK(name_of("rx_1", "bx_2") == "1");
  CHECK(name_of("ry_1", "by_2") == "1");
  CHECK(name_of("rx_1", "by_2") == "(xy)");
  CHECK(name_of("ry_1", "bx_2") == "(xy)");
  CHECK(name_of("gx_1", "bx_2") == "(rg)");
  CHECK(name_of("gy_1", "by_2") == "(rg)");
  CHECK(name_of("gx_1", "by_2") == "(xy)(rg)");
  CHECK(name_of("gy_1", "bx_2") == "(xy)(rg)");
  CHECK(name_of("rx_1", "gx_2") == "(gb)");
  CHECK(name_of("ry_1", "gy_2") == "(gb)");
  CHECK(name_of("rx_1", "gy_2") == "(xy)(gb)");
  CHECK(name_of("ry_1", "gx_2") == "(xy)(gb)");
  CHECK(name_of("bx_1", "rx_2") == "(rb)");
  CHECK(name_of("by_1", "ry_2") == "(rb)");
  CHECK(name_of("bx_1", "ry_2") == "(xy)(rb)");
  CHECK(name_of("by_1", "rx_2") == "(xy)(rb)");
  CHECK(name_of("gx_1", "rx_2") == "(rgb)");
  CHECK(name_of("gy_1", "ry_2") == "(rgb)");
  CHECK(name_of("gx_1", "ry_2") == "(xy)(rgb)");
  CHECK(name_of("gy_1", "rx_2") == "(xy)(rgb)");
  CHECK(name_of("bx_1", "gx_2") == "(rbg)");
  CHECK(name_of("by_1", "gy_2") == "(rbg)");
  CHECK(name_of("bx_1", "gy_2") == "(xy)(rbg)");
  CHECK(name_of("by_1", "gx_2") == "(xy)(rbg)");
}

TEST_CASE("automorphism design trick regression") {
  AnyonTheory cc2 = bilayer_color_code_theory();
  Subspace vzz = vzz_condensation(cc2);
  ChildTheory base(cc2, vzz, *canonical_cc_sections(cc2, vzz));

  Subspace a0 = sp(cc2, {"gz_1", "rz_2"});
  Subspace a1 = sp(cc2, {"rx_1", "gx_2"});
  Subspace a1_img = sp(cc2, {"ry_1", "gx_2"});  // x<->y applied to layer 1

  std::vector<Subspace> seq = {vzz, a1, a0, a1_img, vzz};
  AutomorphismName got = classify_automorphism(sequence_automorphism(cc2, seq, base));
  AutomorphismName xy;
  xy.col_perm = {1, 0, 2};
  CHECK(got == xy);
  CHECK(got.to_string() == "(xy)");
}

TEST_CASE("search on the DA graph") {
  AnyonTheory cc2 = bilayer_color_code_theory();
  auto graph = build_graph(cc2, da_vertices(cc2), canonical_cc_sections);
  int vzz = int(graph.num_vertices()) - 1;

  auto histogram = [](const std::map<FpMat, WalkResult, FpMatLess>& found) {
    std::map<size_t, int> by_len;
    std::set<std::string> names;
    for (const auto& [m, w] : found) {
      AutomorphismName n = classify_automorphism(m);
      names.insert(n.to_string());
      if (!n.is_identity()) by_len[w.min_length]++;
    }
    return std::make_pair(by_len, names.size());
  };

  SUBCASE("tabulated unfolding patterns reproduce the 10/41/20 split") {
    SearchOptions opts;
    opts.edge_excluded = tabulated_unfold_filter(graph, vzz);
    auto [by_len, n_names] = histogram(search_sequences(graph, vzz, opts));
    CHECK(n_names == 72);
    CHECK(by_len[3] == 10);
    CHECK(by_len[4] == 41);
    CHECK(by_len[5] == 20);
    CHECK(by_len[1] == 0);
    CHECK(by_len[2] == 0);
  }

  SUBCASE("the unrestricted graph realizes the (yz) family earlier") {
    auto found = search_sequences(graph, vzz, 5);
    auto [by_len, n_names] = histogram(found);
    CHECK(n_names == 72);
    CHECK(by_len[3] == 14);
    CHECK(by_len[4] == 41);
    CHECK(by_len[5] == 16);
    // The flavor swap (yz) itself appears at length 3, e.g. through the
    // walk VZZ; rx_1,gy_2; gy_1,rx_2; VZZ.
    AutomorphismName yz;
    yz.col_perm = {0, 2, 1};
    auto it = found.find(yz.to_matrix());
    REQUIRE(it != found.end());
    CHECK(it->second.min_length == 3);
    Subspace v = vzz_condensation(cc2);
    ChildTheory base(cc2, v, *canonical_cc_sections(cc2, v));
    std::vector<Subspace> walk = {v, sp(cc2, {"rx_1", "gy_2"}), sp(cc2, {"gy_1", "rx_2"}), v};
    CHECK(sequence_automorphism(cc2, walk, base) == yz.to_matrix());
  }

  SUBCASE("max_len 0 keeps only the identity") {
    auto trivial = search_sequences(graph, vzz, 0);
    CHECK(trivial.size() == 1);
    CHECK(classify_automorphism(trivial.begin()->first).is_identity());
  }

  SUBCASE("thread-count independence") {
    auto found1 = search_sequences(graph, vzz, 4, false, 1);
    auto found4 = search_sequences(graph, vzz, 4, false, 4);
    CHECK(found1.size() == found4.size());
    for (const auto& [m, w] : found1) {
      auto it = found4.find(m);
      REQUIRE(it != found4.end());
      CHECK(it->second.min_length == w.min_length);
    }
  }
}

TEST_CASE("shipped sequence catalog verifies") {
  AnyonTheory cc2 = bilayer_color_code_theory();
  std::ifstream f(std::string(DACODES_DATA_DIR) + "/sequences/aut_catalog.txt");
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  auto cat = load_catalog(buf.str(), cc2);
  CHECK(cat.size() == 71);
  Subspace vzz = vzz_condensation(cc2);
  ChildTheory base(cc2, vzz, *canonical_cc_sections(cc2, vzz));
  std::set<std::string> names;
  for (const auto& e : cat) {
    REQUIRE(e.expected_images.has_value());
    FpMat aut = sequence_automorphism(cc2, e.rounds, base);
    CHECK(matches_images(aut, *e.expected_images));
    names.insert(classify_automorphism(aut).to_string());
  }
  CHECK(names.size() == 71);  // the nontrivial automorphisms are all distinct
}

TEST_CASE("boundary sequences for the triangle protocols") {
  AnyonTheory cc2 = bilayer_color_code_theory();
  Subspace vzz = vzz_condensation(cc2);
  ChildTheory base(cc2, vzz, *canonical_cc_sections(cc2, vzz));

  auto child_vec = [&](const char* name) {
    auto c = parse_color(name[0]).value();
    auto f = parse_flavor(name[1]).value();
    return magic_square_vec(c, f);
  };

  // phi_rbg bulk sequence.
  std::vector<Subspace> bulk = {vzz, sp(cc2, {"rx_1", "gx_2"}), sp(cc2, {"gz_1", "bz_2"}),
                                sp(cc2, {"bx_1", "rx_2"}), vzz};

  // Z boundary: Lagrangian {rz, gz} of the child.
  Subspace b0 = Subspace::span({child_vec("rz"), child_vec("gz")}, 2, 4);
  auto bdry = boundary_sequence(cc2, bulk, base, b0);
  REQUIRE(bdry.size() == 5);
  // Tabulated representatives: rz_1 -> rz_1 -> rz_1 (x gz_1) -> bz_1 -> bz_1.
  const char* expect[5] = {"rz_1", "rz_1", "rz_1", "bz_1", "bz_1"};
  for (int t = 0; t < 5; ++t) {
    Subspace full = bdry[t].sum(bulk[t]);
    CHECK(full.contains(lbl(cc2, expect[t])));
    CHECK(is_lagrangian(cc2, full));
  }
  CHECK(bdry[0].contains(lbl(cc2, "rz_1")));
  CHECK(bdry[1].contains(lbl(cc2, "rz_1")));
  CHECK(bdry[2].contains(lbl(cc2, "rz_1")));
  CHECK(bdry[3].contains(lbl(cc2, "bz_1")));
  CHECK(bdry[4].contains(lbl(cc2, "bz_1")));

  // Identity bulk sequence: boundary constant.
  std::vector<Subspace> constant = {vzz, vzz, vzz};
  auto bdry2 = boundary_sequence(cc2, constant, base, b0);
  for (const auto& s : bdry2) CHECK(s == bdry2[0]);

  // Non-Lagrangian input rejected.
  Subspace not_lag = Subspace::span({child_vec("rz")}, 2, 4);
  CHECK_THROWS_AS(boundary_sequence(cc2, bulk, base, not_lag), NotLagrangian);
}

TEST_CASE("sequence file round trip") {
  AnyonTheory cc2 = bilayer_color_code_theory();
  for (const std::string& text : {table1_seq_1, table1_seq_2, table1_seq_3, padding_seq}) {
    auto seq = load_sequence(text, cc2);
    // Loading the saved canonical form is the identity...
    CHECK(load_sequence(save_sequence(seq, cc2), cc2) == seq);
    // ...and saving is idempotent, so canonical files round-trip bit-exact.
    std::string canon = save_sequence(seq, cc2);
    CHECK(save_sequence(load_sequence(canon, cc2), cc2) == canon);
  }
}

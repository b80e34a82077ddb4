#include "dacodes/condense.hpp"

#include <algorithm>
#include <sstream>

#include "dacodes/parallel.hpp"

namespace dacodes {

ReversiblePair check_reversible(const AnyonTheory& th, const Subspace& a1, const Subspace& a2) {
  if (a1.rank() != a2.rank())
    throw NotReversible("check_reversible: dimension mismatch");
  if (!is_condensible(th, a1) || !is_condensible(th, a2))
    throw NotCondensible("check_reversible: input not condensible");

  ReversiblePair pair;
  pair.a1 = a1;
  pair.a2 = a2;
  pair.q = a1.intersect(a2);
  size_t n_a = a1.rank();
  size_t n_q = pair.q.rank();
  pair.n_qbar = n_a - n_q;

  // Complete the shared Q basis to bases of A1 and A2, Q vectors last.
  auto complete = [&](const Subspace& a) {
    std::vector<AnyonVector> rows;
    Subspace have = pair.q;
    for (const auto& r : a.basis_rows()) {
      if (have.contains(r)) continue;
      rows.push_back(r);
      auto spanrows = have.basis_rows();
      spanrows.push_back(r);
      have = Subspace::span(spanrows, th.p(), th.dim());
    }
    if (rows.size() != pair.n_qbar)
      throw InternalError("check_reversible: basis completion failed");
    for (const auto& r : pair.q.basis_rows()) rows.push_back(r);
    return rows;
  };
  pair.a1_basis = complete(a1);
  pair.a2_basis = complete(a2);

  // B[k][i] = <a2_k, a1_i>; the Q rows and columns vanish automatically.
  FpMat b(n_a, n_a, th.p());
  for (size_t k = 0; k < n_a; ++k)
    for (size_t i = 0; i < n_a; ++i) b.at(k, i) = th.braid(pair.a2_basis[k], pair.a1_basis[i]);
  for (size_t k = 0; k < n_a; ++k)
    for (size_t i = 0; i < n_a; ++i)
      if ((k >= pair.n_qbar || i >= pair.n_qbar) && b.at(k, i))
        throw InternalError("check_reversible: B lacks the expected block form");

  pair.beta = FpMat(pair.n_qbar, pair.n_qbar, th.p());
  for (size_t k = 0; k < pair.n_qbar; ++k)
    for (size_t i = 0; i < pair.n_qbar; ++i) pair.beta.at(k, i) = b.at(k, i);
  auto inv = pair.beta.inverse();
  if (!inv) throw NotReversible("check_reversible: beta singular");
  pair.beta_inv = *inv;
  return pair;
}

bool is_reversible(const AnyonTheory& th, const Subspace& a1, const Subspace& a2) {
  try {
    check_reversible(th, a1, a2);
    return true;
  } catch (const NotReversible&) {
    return false;
  }
}

AnyonVector update_representative(const AnyonTheory& th, const ReversiblePair& pair,
                                  const AnyonVector& l) {
  for (const auto& a : pair.a1.basis_rows())
    if (th.braid(a, l) != 0)
      throw Error("update_representative: L not in A1^perp");
  uint8_t p = th.p();
  // L~ = L - sum_i a1_i (beta^-1)[i][k] <a2_k, L>
  AnyonVector out = l;
  for (size_t i = 0; i < pair.n_qbar; ++i) {
    unsigned coeff = 0;
    for (size_t k = 0; k < pair.n_qbar; ++k)
      coeff += pair.beta_inv.at(i, k) * th.braid(pair.a2_basis[k], l);
    coeff %= p;
    if (coeff) fp_axpy(out, uint8_t(p - coeff), pair.a1_basis[i], p);
  }
  return out;
}

ChildIsomorphism edge_isomorphism(const AnyonTheory& th, const ReversiblePair& pair,
                                  const ChildTheory& c1, const ChildTheory& c2) {
  if (!(c1.condensation() == pair.a1) || !(c2.condensation() == pair.a2))
    throw Error("edge_isomorphism: children do not match the pair");
  size_t d = c1.dim();
  FpMat m(d, d, th.p());
  for (size_t j = 0; j < d; ++j) {
    FpVec e(d, 0);
    e[j] = 1;
    AnyonVector moved = update_representative(th, pair, c1.section(e));
    FpVec img = c2.kappa(moved);
    for (size_t i = 0; i < d; ++i) m.at(i, j) = img[i];
  }
  if (!m.inverse()) throw InternalError("edge_isomorphism: map not invertible");
  // Statistics preservation.
  for (size_t i = 0; i < d; ++i) {
    FpVec ei(d, 0);
    ei[i] = 1;
    if (c2.q_child(m.mul_vec(ei)) != c1.q_child(ei))
      throw InternalError("edge_isomorphism: self statistics not preserved");
    for (size_t j = 0; j < d; ++j) {
      FpVec ej(d, 0);
      ej[j] = 1;
      if (c2.braid_child(m.mul_vec(ei), m.mul_vec(ej)) != c1.braid_child(ei, ej))
        throw InternalError("edge_isomorphism: braiding not preserved");
    }
  }
  return ChildIsomorphism{m};
}

FpMat sequence_isomorphism(const AnyonTheory& th, const std::vector<Subspace>& seq,
                           const ChildTheory& c_first, const ChildTheory& c_last) {
  if (seq.empty()) throw Error("sequence_isomorphism: empty sequence");
  if (!(c_first.condensation() == seq.front()) || !(c_last.condensation() == seq.back()))
    throw Error("sequence_isomorphism: children do not match sequence endpoints");
  size_t d = c_first.dim();
  std::vector<ReversiblePair> pairs;
  for (size_t t = 0; t + 1 < seq.size(); ++t) {
    try {
      pairs.push_back(check_reversible(th, seq[t], seq[t + 1]));
    } catch (const NotReversible& e) {
      throw NotReversible("step " + std::to_string(t) + ": " + e.what());
    }
  }
  FpMat m(d, d, th.p());
  for (size_t j = 0; j < d; ++j) {
    FpVec e(d, 0);
    e[j] = 1;
    AnyonVector l = c_first.section(e);
    for (const auto& pr : pairs) l = update_representative(th, pr, l);
    FpVec img = c_last.kappa(l);
    for (size_t i = 0; i < d; ++i) m.at(i, j) = img[i];
  }
  return m;
}

FpMat sequence_automorphism(const AnyonTheory& th, const std::vector<Subspace>& seq,
                            const ChildTheory& base_child) {
  if (seq.empty() || !(seq.front() == seq.back()))
    throw Error("sequence_automorphism: sequence must be closed");
  return sequence_isomorphism(th, seq, base_child, base_child);
}

bool AutomorphismName::is_identity() const {
  return !transpose && row_perm == std::array<uint8_t, 3>{0, 1, 2} &&
         col_perm == std::array<uint8_t, 3>{0, 1, 2};
}

AutomorphismName AutomorphismName::compose(const AutomorphismName& first) const {
  AutomorphismName out;
  out.transpose = transpose != first.transpose;
  for (int i = 0; i < 3; ++i) {
    if (!transpose) {
      out.row_perm[i] = row_perm[first.row_perm[i]];
      out.col_perm[i] = col_perm[first.col_perm[i]];
    } else {
      out.row_perm[i] = row_perm[first.col_perm[i]];
      out.col_perm[i] = col_perm[first.row_perm[i]];
    }
  }
  return out;
}

AutomorphismName AutomorphismName::inverse() const {
  AutomorphismName out;
  std::array<uint8_t, 3> ri{}, ci{};
  for (int i = 0; i < 3; ++i) {
    ri[row_perm[i]] = uint8_t(i);
    ci[col_perm[i]] = uint8_t(i);
  }
  if (!transpose) {
    out.row_perm = ri;
    out.col_perm = ci;
  } else {
    out.row_perm = ci;
    out.col_perm = ri;
    out.transpose = true;
  }
  return out;
}

AnyonLabel AutomorphismName::apply(const AnyonLabel& l) const {
  AnyonLabel out = l;
  int c = int(l.color), f = int(l.flavor);
  if (!transpose) {
    out.color = Color(row_perm[c]);
    out.flavor = Flavor(col_perm[f]);
  } else {
    out.color = Color(row_perm[f]);
    out.flavor = Flavor(col_perm[c]);
  }
  return out;
}

FpMat AutomorphismName::to_matrix(uint8_t p) const {
  // Child coordinate basis (e1,e2,m1,m2) = labels (rz, bz, bx, rx).
  static const AnyonLabel basis[4] = {{Color::R, Flavor::Z, 1},
                                      {Color::B, Flavor::Z, 1},
                                      {Color::B, Flavor::X, 1},
                                      {Color::R, Flavor::X, 1}};
  FpMat m(4, 4, p);
  for (int j = 0; j < 4; ++j) {
    AnyonLabel img = apply(basis[j]);
    FpVec v = magic_square_vec(img.color, img.flavor, p);
    for (int i = 0; i < 4; ++i) m.at(i, j) = v[i];
  }
  return m;
}

std::string AutomorphismName::to_string() const {
  // Permutation on the six letters x,y,z,r,g,b (flavor block first).
  std::array<int, 6> perm{};
  for (int f = 0; f < 3; ++f) perm[f] = transpose ? 3 + row_perm[f] : col_perm[f];
  for (int c = 0; c < 3; ++c) perm[3 + c] = transpose ? col_perm[c] : 3 + row_perm[c];
  static const char letters[7] = "xyzrgb";
  std::string out;
  std::array<bool, 6> seen{};
  for (int s = 0; s < 6; ++s) {
    if (seen[s] || perm[s] == s) continue;
    out += '(';
    int cur = s;
    do {
      out += letters[cur];
      seen[cur] = true;
      cur = perm[cur];
    } while (cur != s);
    out += ')';
  }
  return out.empty() ? "1" : out;
}

std::optional<AutomorphismName> AutomorphismName::parse(const std::string& s) {
  static const std::string letters = "xyzrgb";
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  if (s != "1") {
    size_t i = 0;
    while (i < s.size()) {
      if (s[i] != '(') return std::nullopt;
      size_t close = s.find(')', i);
      if (close == std::string::npos) return std::nullopt;
      std::string cycle = s.substr(i + 1, close - i - 1);
      if (cycle.size() < 2) return std::nullopt;
      for (size_t k = 0; k < cycle.size(); ++k) {
        size_t a = letters.find(cycle[k]);
        size_t b = letters.find(cycle[(k + 1) % cycle.size()]);
        if (a == std::string::npos || b == std::string::npos) return std::nullopt;
        perm[a] = int(b);
      }
      i = close + 1;
    }
  }
  bool flavors_to_flavors = perm[0] < 3 && perm[1] < 3 && perm[2] < 3;
  bool flavors_to_colors = perm[0] >= 3 && perm[1] >= 3 && perm[2] >= 3;
  AutomorphismName out;
  if (flavors_to_flavors) {
    if (!(perm[3] >= 3 && perm[4] >= 3 && perm[5] >= 3)) return std::nullopt;
    for (int i = 0; i < 3; ++i) {
      out.col_perm[i] = uint8_t(perm[i]);
      out.row_perm[i] = uint8_t(perm[3 + i] - 3);
    }
  } else if (flavors_to_colors) {
    if (!(perm[3] < 3 && perm[4] < 3 && perm[5] < 3)) return std::nullopt;
    out.transpose = true;
    for (int i = 0; i < 3; ++i) {
      out.row_perm[i] = uint8_t(perm[i] - 3);
      out.col_perm[i] = uint8_t(perm[3 + i]);
    }
  } else {
    return std::nullopt;
  }
  return out;
}

AutomorphismName classify_automorphism(const FpMat& iso) {
  if (iso.rows() != 4 || iso.cols() != 4)
    throw NotAMagicSquareSymmetry("classify_automorphism: expected 4x4 child map");
  uint8_t p = iso.p();
  // Image label of every boson.
  int img_color[3][3], img_flavor[3][3];
  for (int c = 0; c < 3; ++c)
    for (int f = 0; f < 3; ++f) {
      FpVec v = iso.mul_vec(magic_square_vec(Color(c), Flavor(f), p));
      bool found = false;
      for (int c2 = 0; c2 < 3 && !found; ++c2)
        for (int f2 = 0; f2 < 3 && !found; ++f2)
          if (magic_square_vec(Color(c2), Flavor(f2), p) == v) {
            img_color[c][f] = c2;
            img_flavor[c][f] = f2;
            found = true;
          }
      if (!found)
        throw NotAMagicSquareSymmetry("classify_automorphism: boson maps outside magic square");
    }
  // Plain form (c,f) -> (pi(c), tau(f)).
  auto fits_plain = [&]() -> std::optional<AutomorphismName> {
    AutomorphismName n;
    for (int c = 0; c < 3; ++c) {
      int pc = img_color[c][0];
      for (int f = 1; f < 3; ++f)
        if (img_color[c][f] != pc) return std::nullopt;
      n.row_perm[c] = uint8_t(pc);
    }
    for (int f = 0; f < 3; ++f) {
      int tf = img_flavor[0][f];
      for (int c = 1; c < 3; ++c)
        if (img_flavor[c][f] != tf) return std::nullopt;
      n.col_perm[f] = uint8_t(tf);
    }
    return n;
  };
  // Transposed form (c,f) -> (pi(f), tau(c)).
  auto fits_transpose = [&]() -> std::optional<AutomorphismName> {
    AutomorphismName n;
    n.transpose = true;
    for (int f = 0; f < 3; ++f) {
      int pc = img_color[0][f];
      for (int c = 1; c < 3; ++c)
        if (img_color[c][f] != pc) return std::nullopt;
      n.row_perm[f] = uint8_t(pc);
    }
    for (int c = 0; c < 3; ++c) {
      int tf = img_flavor[c][0];
      for (int f = 1; f < 3; ++f)
        if (img_flavor[c][f] != tf) return std::nullopt;
      n.col_perm[c] = uint8_t(tf);
    }
    return n;
  };
  if (auto n = fits_plain()) return *n;
  if (auto n = fits_transpose()) return *n;
  throw NotAMagicSquareSymmetry("classify_automorphism: not a row/column/transpose symmetry");
}

std::optional<int> CondensationGraph::find_vertex(const Subspace& s) const {
  for (size_t i = 0; i < verts_.size(); ++i)
    if (verts_[i].cond == s) return int(i);
  return std::nullopt;
}

std::string CondensationGraph::to_dot() const {
  std::ostringstream os;
  os << "graph condensations {\n";
  for (size_t i = 0; i < verts_.size(); ++i)
    os << "  v" << i << " [label=\"" << verts_[i].label << "\"];\n";
  for (size_t i = 0; i < verts_.size(); ++i)
    for (const auto& e : adj_[i]) {
      if (e.to < int(i)) continue;
      std::string lbl;
      if (verts_[i].child.dim() == 4) {
        try {
          lbl = classify_automorphism(e.iso).to_string();
        } catch (const NotAMagicSquareSymmetry&) {
          lbl = "iso";
        }
      } else if (e.iso == FpMat::identity(e.iso.rows(), e.iso.p())) {
        lbl = "1";
      } else {
        lbl = "em";
      }
      os << "  v" << i << " -- v" << e.to << " [label=\"" << lbl << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

CondensationGraph build_graph(
    const AnyonTheory& th, const std::vector<Subspace>& vertex_set,
    const std::function<std::optional<std::vector<AnyonVector>>(const AnyonTheory&,
                                                                const Subspace&)>& sections) {
  CondensationGraph g(th);
  for (const auto& s : vertex_set) {
    if (!is_condensible(th, s)) throw NotCondensible("build_graph: vertex not condensible");
    std::optional<std::vector<AnyonVector>> sec;
    if (sections) sec = sections(th, s);
    ChildTheory child = sec ? ChildTheory(th, s, *sec) : ChildTheory(th, s);
    std::string label;
    for (const auto& r : s.basis_rows()) {
      if (!label.empty()) label += "; ";
      label += label_product_to_string(r, th);
    }
    if (label.empty()) label = "0";
    g.verts_.push_back({s, label, std::move(child)});
  }
  g.adj_.assign(g.verts_.size(), {});
  for (size_t i = 0; i < g.verts_.size(); ++i)
    for (size_t j = i + 1; j < g.verts_.size(); ++j) {
      ReversiblePair pair;
      try {
        pair = check_reversible(th, g.verts_[i].cond, g.verts_[j].cond);
      } catch (const NotReversible&) {
        continue;
      }
      auto fwd = edge_isomorphism(th, pair, g.verts_[i].child, g.verts_[j].child);
      ReversiblePair rev = check_reversible(th, g.verts_[j].cond, g.verts_[i].cond);
      auto bwd = edge_isomorphism(th, rev, g.verts_[j].child, g.verts_[i].child);
      if (!(bwd.matrix.mul(fwd.matrix) == FpMat::identity(fwd.matrix.rows(), th.p())))
        throw InternalError("build_graph: edge isomorphisms are not mutual inverses");
      g.adj_[i].push_back({int(j), fwd.matrix});
      g.adj_[j].push_back({int(i), bwd.matrix});
      ++g.n_edges_;
    }
  return g;
}

std::optional<std::vector<AnyonVector>> canonical_cc_sections(const AnyonTheory& th,
                                                              const Subspace& cond) {
  // The interlayer V(ZZ) condensation of the bilayer parent: the effective
  // color code with representatives rz_1, bz_1, bx_1*bx_2, rx_1*rx_2.
  if (th.n_copies() == 4 && cond.rank() == 2 && cond == vzz_condensation(th)) {
    return std::vector<AnyonVector>{
        parse_label_product("rz_1", th), parse_label_product("bz_1", th),
        parse_label_product("bx_1*bx_2", th), parse_label_product("rx_1*rx_2", th)};
  }
  // One single-boson condensation per layer: toric-code children with the
  // pairing e = [c s'], m = [c' s].
  if (th.n_copies() % 2) return std::nullopt;
  size_t n_layers = th.n_copies() / 2;
  if (cond.rank() != n_layers) return std::nullopt;
  std::vector<std::optional<AnyonLabel>> layer_label(n_layers);
  for (const auto& row : cond.basis_rows()) {
    bool matched = false;
    for (size_t l = 0; l < n_layers && !matched; ++l)
      for (int c = 0; c < 3 && !matched; ++c)
        for (int f = 0; f < 3 && !matched; ++f) {
          AnyonLabel lab{Color(c), Flavor(f), int(l) + 1};
          if (label_to_vector(lab, th) == row) {
            if (layer_label[l]) return std::nullopt;
            layer_label[l] = lab;
            matched = true;
          }
        }
    if (!matched) return std::nullopt;
  }
  std::vector<AnyonVector> e_sec, m_sec;
  for (size_t l = 0; l < n_layers; ++l) {
    if (!layer_label[l]) return std::nullopt;
    AnyonLabel lab = *layer_label[l];
    Flavor fprime = lab.flavor == Flavor::X ? Flavor::Y : Flavor::X;
    Color cprime = lab.color == Color::R ? Color::G : Color::R;
    e_sec.push_back(label_to_vector({lab.color, fprime, lab.layer}, th));
    m_sec.push_back(label_to_vector({cprime, lab.flavor, lab.layer}, th));
  }
  e_sec.insert(e_sec.end(), m_sec.begin(), m_sec.end());
  return e_sec;
}

std::vector<Subspace> single_cc_vertices(const AnyonTheory& cc) {
  std::vector<Subspace> out;
  for (int c = 0; c < 3; ++c)
    for (int f = 0; f < 3; ++f)
      out.push_back(
          Subspace::span({label_to_vector({Color(c), Flavor(f), 1}, cc)}, cc.p(), cc.dim()));
  return out;
}

Subspace vzz_condensation(const AnyonTheory& cc2) {
  return Subspace::span(
      {parse_label_product("rz_1*rz_2", cc2), parse_label_product("bz_1*bz_2", cc2)}, cc2.p(),
      cc2.dim());
}

std::vector<Subspace> da_vertices(const AnyonTheory& cc2) {
  std::vector<Subspace> out;
  for (int c1 = 0; c1 < 3; ++c1)
    for (int f1 = 0; f1 < 3; ++f1)
      for (int c2 = 0; c2 < 3; ++c2)
        for (int f2 = 0; f2 < 3; ++f2)
          out.push_back(Subspace::span({label_to_vector({Color(c1), Flavor(f1), 1}, cc2),
                                        label_to_vector({Color(c2), Flavor(f2), 2}, cc2)},
                                       cc2.p(), cc2.dim()));
  out.push_back(vzz_condensation(cc2));
  return out;
}

bool FpMatLess::operator()(const FpMat& a, const FpMat& b) const {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != b.at(i, j)) return a.at(i, j) < b.at(i, j);
  return false;
}

namespace {

struct SearchAccumulator {
  std::map<FpMat, WalkResult, FpMatLess> found;

  void record(const FpMat& m, size_t len, const std::vector<int>& walk) {
    auto it = found.find(m);
    if (it == found.end()) {
      found.emplace(m, WalkResult{m, len, walk});
    } else if (len < it->second.min_length) {
      it->second.min_length = len;
      it->second.example = walk;
    }
  }

  void merge(const SearchAccumulator& o) {
    for (const auto& [m, r] : o.found) record(m, r.min_length, r.example);
  }
};

void search_dfs(const CondensationGraph& g, int base, const SearchOptions& opts, int cur,
                const FpMat& acc, std::vector<int>& walk, SearchAccumulator& out) {
  size_t len = walk.size() - 1;
  if (len >= opts.max_len) return;
  for (const auto& e : g.edges_from(cur)) {
    if (opts.edge_excluded && opts.edge_excluded(cur, e.to)) continue;
    FpMat next = e.iso.mul(acc);
    walk.push_back(e.to);
    if (e.to == base) {
      out.record(next, len + 1, walk);
      if (opts.interior_base_allowed) search_dfs(g, base, opts, e.to, next, walk, out);
    } else {
      search_dfs(g, base, opts, e.to, next, walk, out);
    }
    walk.pop_back();
  }
}

}  // namespace

std::map<FpMat, WalkResult, FpMatLess> search_sequences(const CondensationGraph& graph, int base,
                                                        const SearchOptions& opts) {
  size_t d = graph.vertex(base).child.dim();
  SearchAccumulator total;
  {
    std::vector<int> trivial{base};
    total.record(FpMat::identity(d, graph.theory().p()), 0, trivial);
  }
  if (opts.max_len == 0) return total.found;

  const auto& first_edges = graph.edges_from(base);
  std::vector<SearchAccumulator> parts(first_edges.size());
  parallel_for(first_edges.size(), opts.n_threads, [&](size_t i) {
    const auto& e = first_edges[i];
    if (opts.edge_excluded && opts.edge_excluded(base, e.to)) return;
    std::vector<int> walk{base, e.to};
    FpMat acc = e.iso;
    if (e.to == base) return;
    search_dfs(graph, base, opts, e.to, acc, walk, parts[i]);
  });
  for (const auto& p : parts) total.merge(p);
  return total.found;
}

std::map<FpMat, WalkResult, FpMatLess> search_sequences(const CondensationGraph& graph, int base,
                                                        size_t max_len,
                                                        bool interior_base_allowed,
                                                        int n_threads) {
  SearchOptions opts;
  opts.max_len = max_len;
  opts.interior_base_allowed = interior_base_allowed;
  opts.n_threads = n_threads;
  return search_sequences(graph, base, opts);
}

std::function<bool(int, int)> tabulated_unfold_filter(const CondensationGraph& graph, int base) {
  const AnyonTheory& th = graph.theory();
  // Flavor pattern (sigma_1, sigma_2) of a product vertex, or (-1,-1).
  auto pattern = [&th](const Subspace& s) {
    int f1 = -1, f2 = -1;
    for (const auto& row : s.basis_rows())
      for (int c = 0; c < 3; ++c)
        for (int f = 0; f < 3; ++f)
          for (int l = 1; l <= 2; ++l)
            if (label_to_vector({Color(c), Flavor(f), l}, th) == row) (l == 1 ? f1 : f2) = f;
    return std::make_pair(f1, f2);
  };
  std::vector<bool> is_xy(graph.num_vertices(), false);
  for (size_t v = 0; v < graph.num_vertices(); ++v) {
    auto [f1, f2] = pattern(graph.vertex(v).cond);
    is_xy[v] = (f1 == int(Flavor::X) && f2 == int(Flavor::Y));
  }
  return [base, is_xy = std::move(is_xy)](int from, int to) {
    if (from == base) return is_xy[to];
    if (to == base) return is_xy[from];
    return false;
  };
}

std::vector<Subspace> boundary_sequence(const AnyonTheory& th, const std::vector<Subspace>& bulk,
                                        const ChildTheory& c0, const Subspace& b0_child) {
  if (bulk.empty()) throw Error("boundary_sequence: empty bulk sequence");
  if (!(c0.condensation() == bulk.front()))
    throw Error("boundary_sequence: child does not match first bulk round");
  if (b0_child.rank() != c0.n_copies())
    throw NotLagrangian("boundary_sequence: wrong dimension for a Lagrangian");
  auto rows = b0_child.basis_rows();
  for (size_t i = 0; i < rows.size(); ++i) {
    if (c0.q_child(rows[i]) != 0)
      throw NotLagrangian("boundary_sequence: B0 contains a non-boson");
    for (size_t j = i; j < rows.size(); ++j)
      if (c0.braid_child(rows[i], rows[j]) != 0)
        throw NotLagrangian("boundary_sequence: B0 not self-orthogonal");
  }

  std::vector<AnyonVector> reps;
  for (const auto& r : rows) reps.push_back(c0.section(r));
  std::vector<Subspace> out;
  out.push_back(Subspace::span(reps, th.p(), th.dim()));
  for (size_t t = 0; t + 1 < bulk.size(); ++t) {
    ReversiblePair pair = check_reversible(th, bulk[t], bulk[t + 1]);
    for (auto& r : reps) r = update_representative(th, pair, r);
    out.push_back(Subspace::span(reps, th.p(), th.dim()));
  }
  for (size_t t = 0; t < bulk.size(); ++t) {
    Subspace full = bulk[t].sum(out[t]);
    if (!is_lagrangian(th, full))
      throw NotLagrangian("boundary_sequence: bulk+boundary not Lagrangian at round " +
                          std::to_string(t));
  }
  return out;
}

std::vector<Subspace> load_sequence(const std::string& text, const AnyonTheory& th) {
  std::vector<Subspace> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (line == "VZZ") {
      out.push_back(vzz_condensation(th));
      continue;
    }
    std::vector<AnyonVector> gens;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      if (tok.find_first_not_of(" \t") == std::string::npos) continue;
      gens.push_back(parse_label_product(tok, th));
    }
    out.push_back(Subspace::span(gens, th.p(), th.dim()));
  }
  return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& text, const AnyonTheory& th) {
  std::vector<CatalogEntry> out;
  std::istringstream is(text);
  std::string line;
  CatalogEntry cur;
  bool in_block = false;
  auto trim = [](std::string s) {
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("seq ", 0) == 0) {
      cur = CatalogEntry{};
      cur.name = trim(line.substr(4));
      in_block = true;
    } else if (line == "end") {
      if (!in_block) throw Error("load_catalog: stray 'end'");
      out.push_back(std::move(cur));
      in_block = false;
    } else if (line.rfind("images ", 0) == 0) {
      std::stringstream ss(line.substr(7));
      std::array<AnyonLabel, 4> imgs;
      for (int i = 0; i < 4; ++i) {
        std::string tok;
        ss >> tok;
        auto c = tok.size() == 2 ? parse_color(tok[0]) : std::nullopt;
        auto f = tok.size() == 2 ? parse_flavor(tok[1]) : std::nullopt;
        if (!c || !f) throw Error("load_catalog: bad image label '" + tok + "'");
        imgs[i] = {*c, *f, 1};
      }
      cur.expected_images = imgs;
    } else if (line.rfind("round ", 0) == 0) {
      auto rounds = load_sequence(line.substr(6), th);
      if (rounds.size() != 1) throw Error("load_catalog: bad round line");
      cur.rounds.push_back(rounds[0]);
    } else {
      throw Error("load_catalog: unrecognized line '" + line + "'");
    }
  }
  if (in_block) throw Error("load_catalog: unterminated block");
  return out;
}

bool matches_images(const FpMat& aut, const std::array<AnyonLabel, 4>& images) {
  static const AnyonLabel sources[4] = {{Color::B, Flavor::X, 1},
                                        {Color::R, Flavor::Z, 1},
                                        {Color::R, Flavor::X, 1},
                                        {Color::B, Flavor::Z, 1}};
  for (int i = 0; i < 4; ++i) {
    FpVec got = aut.mul_vec(magic_square_vec(sources[i].color, sources[i].flavor, aut.p()));
    if (got != magic_square_vec(images[i].color, images[i].flavor, aut.p())) return false;
  }
  return true;
}

std::string save_sequence(const std::vector<Subspace>& seq, const AnyonTheory& th) {
  std::string out;
  bool has_vzz = th.n_copies() == 4;
  Subspace vzz = has_vzz ? vzz_condensation(th) : Subspace();
  for (const auto& s : seq) {
    if (has_vzz && s == vzz) {
      out += "VZZ\n";
      continue;
    }
    std::string line;
    for (const auto& r : s.basis_rows()) {
      if (!line.empty()) line += "; ";
      line += label_product_to_string(r, th);
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace dacodes

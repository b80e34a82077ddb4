#include "dacodes/anyon.hpp"

#include <algorithm>
#include <sstream>

namespace dacodes {

AnyonTheory::AnyonTheory(uint8_t p, int n_copies) : p_(p), n_(n_copies) {
  if (!is_prime(p)) throw Error("AnyonTheory: p must be prime");
  if (n_copies < 0) throw Error("AnyonTheory: negative copy count");
  size_t d = dim();
  mu_ = FpMat(d, d, p);
  for (int i = 0; i < n_; ++i) mu_.at(i, n_ + i) = 1;
  lambda_ = FpMat(d, d, p);
  for (int i = 0; i < n_; ++i) {
    lambda_.at(i, n_ + i) = 1;
    lambda_.at(n_ + i, i) = 1;
  }
}

uint8_t AnyonTheory::self_statistics(const AnyonVector& c) const {
  if (c.size() != dim()) throw DimensionMismatch("self_statistics");
  unsigned acc = 0;
  for (int i = 0; i < n_; ++i) acc += c[i] * c[n_ + i];
  return uint8_t(acc % p_);
}

uint8_t AnyonTheory::braid(const AnyonVector& c1, const AnyonVector& c2) const {
  if (c1.size() != dim() || c2.size() != dim()) throw DimensionMismatch("braid");
  unsigned acc = 0;
  for (int i = 0; i < n_; ++i) acc += c1[i] * c2[n_ + i] + c1[n_ + i] * c2[i];
  return uint8_t(acc % p_);
}

AnyonVector AnyonTheory::e_charge(int copy) const {
  AnyonVector v = zero();
  v.at(copy) = 1;
  return v;
}

AnyonVector AnyonTheory::m_charge(int copy) const {
  AnyonVector v = zero();
  v.at(n_ + copy) = 1;
  return v;
}

Subspace Subspace::span(const std::vector<AnyonVector>& gens, uint8_t p, size_t dim) {
  Subspace s;
  FpMat m(0, dim, p);
  for (const auto& g : gens) {
    if (g.size() != dim) throw DimensionMismatch("Subspace::span");
    m.add_row(g);
  }
  m.rref();
  s.basis_ = m;
  if (s.basis_.rows() == 0) s.basis_ = FpMat(0, dim, p);
  return s;
}

bool Subspace::contains(const AnyonVector& v) const {
  return fp_is_zero(reduce(v));
}

bool Subspace::contains_subspace(const Subspace& other) const {
  for (const auto& r : other.basis_.row_list())
    if (!contains(r)) return false;
  return true;
}

AnyonVector Subspace::reduce(const AnyonVector& v) const {
  if (v.size() != ambient_dim()) throw DimensionMismatch("Subspace::reduce");
  AnyonVector out = v;
  uint8_t p = basis_.p();
  for (size_t i = 0; i < basis_.rows(); ++i) {
    // RREF row i has a leading 1 at its pivot column.
    size_t piv = 0;
    while (piv < basis_.cols() && basis_.at(i, piv) == 0) ++piv;
    if (piv == basis_.cols()) continue;
    uint8_t coeff = out[piv];
    if (coeff) fp_axpy(out, uint8_t(p - coeff), basis_.row(i), p);
  }
  return out;
}

Subspace Subspace::sum(const Subspace& other) const {
  auto rows = basis_.row_list();
  auto rows2 = other.basis_.row_list();
  rows.insert(rows.end(), rows2.begin(), rows2.end());
  return span(rows, basis_.p(), ambient_dim());
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Left kernel of the stacked bases yields coefficient pairs (x, y) with
  // x*B1 + y*B2 = 0; the intersection is spanned by the x*B1 parts.
  FpMat stacked(0, ambient_dim(), basis_.p());
  for (const auto& r : basis_.row_list()) stacked.add_row(r);
  for (const auto& r : other.basis_.row_list()) stacked.add_row(r);
  FpMat lk = stacked.left_kernel();
  std::vector<AnyonVector> gens;
  for (const auto& coef : lk.row_list()) {
    FpVec x(coef.begin(), coef.begin() + basis_.rows());
    gens.push_back(basis_.transposed().mul_vec(x));
  }
  return span(gens, basis_.p(), ambient_dim());
}

std::vector<AnyonVector> Subspace::elements() const {
  uint8_t p = basis_.p();
  std::vector<AnyonVector> out{AnyonVector(ambient_dim(), 0)};
  for (size_t i = 0; i < basis_.rows(); ++i) {
    std::vector<AnyonVector> next;
    for (const auto& e : out)
      for (int s = 0; s < p; ++s) {
        AnyonVector v = e;
        fp_axpy(v, uint8_t(s), basis_.row(i), p);
        next.push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

bool is_condensible(const AnyonTheory& th, const Subspace& a) {
  auto rows = a.basis_rows();
  for (size_t i = 0; i < rows.size(); ++i) {
    if (th.self_statistics(rows[i]) != 0) return false;
    for (size_t j = i + 1; j < rows.size(); ++j)
      if (th.braid(rows[i], rows[j]) != 0) return false;
  }
  return true;
}

Subspace orthogonal_complement(const AnyonTheory& th, const Subspace& a) {
  if (a.rank() == 0) {
    std::vector<AnyonVector> all;
    for (size_t i = 0; i < th.dim(); ++i) {
      AnyonVector v = th.zero();
      v[i] = 1;
      all.push_back(v);
    }
    return Subspace::span(all, th.p(), th.dim());
  }
  FpMat m = a.basis().mul(th.lambda());
  FpMat ker = m.column_kernel();
  return Subspace::span(ker.row_list(), th.p(), th.dim());
}

bool is_lagrangian(const AnyonTheory& th, const Subspace& a) {
  return is_condensible(th, a) && a.rank() == size_t(th.n_copies());
}

ChildTheory::ChildTheory(const AnyonTheory& parent, const Subspace& a)
    : parent_(&parent), a_(a) {
  if (!is_condensible(parent, a)) throw NotCondensible("child_theory: subspace not condensible");
  orth_ = orthogonal_complement(parent, a);
  n_child_ = parent.n_copies() - a.rank();
  // Default section: RREF rows of A^perp reduced modulo A, re-echeloned.
  std::vector<AnyonVector> reduced;
  for (const auto& r : orth_.basis_rows()) {
    AnyonVector v = a_.reduce(r);
    if (!fp_is_zero(v)) reduced.push_back(v);
  }
  Subspace q = Subspace::span(reduced, parent.p(), parent.dim());
  if (q.rank() != dim()) throw InternalError("child_theory: quotient dimension mismatch");
  sec_ = q.basis_rows();
  finish_init();
}

ChildTheory::ChildTheory(const AnyonTheory& parent, const Subspace& a,
                         const std::vector<AnyonVector>& section_images)
    : parent_(&parent), a_(a) {
  if (!is_condensible(parent, a)) throw NotCondensible("child_theory: subspace not condensible");
  orth_ = orthogonal_complement(parent, a);
  n_child_ = parent.n_copies() - a.rank();
  if (section_images.size() != dim())
    throw DimensionMismatch("child_theory: wrong section size");
  for (const auto& s : section_images)
    if (!orth_.contains(s)) throw Error("child_theory: section image not in A^perp");
  sec_ = section_images;
  finish_init();
}

void ChildTheory::finish_init() {
  uint8_t p = parent_->p();
  size_t n2 = parent_->dim();
  // Classes of the section images together with A must span A^perp.
  std::vector<AnyonVector> all = sec_;
  for (const auto& r : a_.basis_rows()) all.push_back(r);
  Subspace full = Subspace::span(all, p, n2);
  if (full.rank() != sec_.size() + a_.rank() || !(full == orth_))
    throw Error("child_theory: section images do not complement A in A^perp");

  // Build kappa as a matrix: extend [sec; A; complement-of-A^perp] to a basis
  // of F_p^{2N}; kappa maps sec_i -> e_i and the rest to 0.
  FpMat basis(0, n2, p);
  for (const auto& s : sec_) basis.add_row(s);
  for (const auto& r : a_.basis_rows()) basis.add_row(r);
  Subspace have = full;
  for (size_t i = 0; i < n2 && basis.rows() < n2; ++i) {
    AnyonVector v(n2, 0);
    v[i] = 1;
    if (!have.contains(v)) {
      basis.add_row(v);
      auto rows = have.basis_rows();
      rows.push_back(v);
      have = Subspace::span(rows, p, n2);
    }
  }
  if (basis.rows() != n2) throw InternalError("child_theory: basis completion failed");
  auto binv = basis.transposed().inverse();
  if (!binv) throw InternalError("child_theory: basis not invertible");
  // x = B^T y where y are coordinates in our basis; kappa(x) = first dim() of y.
  FpMat proj(dim(), n2, p);
  for (size_t i = 0; i < dim(); ++i) proj.at(i, i) = 1;
  kappa_ = proj.mul(*binv);
}

FpVec ChildTheory::kappa(const AnyonVector& v) const {
  if (!orth_.contains(v)) throw Error("kappa: vector is confined (not in A^perp)");
  return kappa_.mul_vec(v);
}

AnyonVector ChildTheory::section(const FpVec& c) const {
  if (c.size() != dim()) throw DimensionMismatch("section");
  AnyonVector out = parent_->zero();
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i]) fp_axpy(out, c[i], sec_[i], parent_->p());
  return out;
}

uint8_t ChildTheory::q_child(const FpVec& c) const {
  return parent_->self_statistics(section(c));
}

uint8_t ChildTheory::braid_child(const FpVec& c1, const FpVec& c2) const {
  return parent_->braid(section(c1), section(c2));
}

FpMat ChildTheory::lambda_child() const {
  FpMat out(dim(), dim(), parent_->p());
  for (size_t i = 0; i < dim(); ++i)
    for (size_t j = 0; j < dim(); ++j) out.at(i, j) = parent_->braid(sec_[i], sec_[j]);
  return out;
}

char color_char(Color c) { return "rgb"[int(c)]; }
char flavor_char(Flavor f) { return "xyz"[int(f)]; }

std::optional<Color> parse_color(char c) {
  switch (c) {
    case 'r': return Color::R;
    case 'g': return Color::G;
    case 'b': return Color::B;
    default: return std::nullopt;
  }
}

std::optional<Flavor> parse_flavor(char c) {
  switch (c) {
    case 'x': return Flavor::X;
    case 'y': return Flavor::Y;
    case 'z': return Flavor::Z;
    default: return std::nullopt;
  }
}

FpVec magic_square_vec(Color c, Flavor f, uint8_t p) {
  // Double toric-code dictionary, basis (e1, e2, m1, m2):
  //   rx=1m ry=em rz=e1 / gx=mm gy=ff gz=ee / bx=m1 by=me bz=1e
  static const uint8_t table[3][3][4] = {
      {{0, 0, 0, 1}, {1, 0, 0, 1}, {1, 0, 0, 0}},
      {{0, 0, 1, 1}, {1, 1, 1, 1}, {1, 1, 0, 0}},
      {{0, 0, 1, 0}, {0, 1, 1, 0}, {0, 1, 0, 0}},
  };
  (void)p;
  const uint8_t* v = table[int(c)][int(f)];
  return FpVec(v, v + 4);
}

AnyonVector label_to_vector(const AnyonLabel& label, const AnyonTheory& th) {
  if (th.n_copies() % 2 != 0)
    throw InvalidLabel("label_to_vector: theory is not a stack of color codes");
  int n_layers = th.n_copies() / 2;
  if (label.layer < 1 || label.layer > n_layers)
    throw InvalidLabel("label_to_vector: layer out of range");
  FpVec ms = magic_square_vec(label.color, label.flavor, th.p());
  AnyonVector v = th.zero();
  int c0 = 2 * (label.layer - 1);  // first toric-code copy of this layer
  int n = th.n_copies();
  v[c0] = ms[0];
  v[c0 + 1] = ms[1];
  v[n + c0] = ms[2];
  v[n + c0 + 1] = ms[3];
  return v;
}

AnyonVector parse_label_product(const std::string& text, const AnyonTheory& th) {
  AnyonVector out = th.zero();
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, '*')) {
    // strip spaces
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return std::isspace(c); }),
              tok.end());
    if (tok.empty()) continue;
    auto c = tok.size() >= 2 ? parse_color(tok[0]) : std::nullopt;
    auto f = tok.size() >= 2 ? parse_flavor(tok[1]) : std::nullopt;
    int layer = 1;
    if (tok.size() > 2) {
      size_t pos = 2;
      if (tok[pos] == '_') ++pos;
      layer = std::stoi(tok.substr(pos));
    }
    if (!c || !f) throw InvalidLabel("parse_label_product: bad token '" + tok + "'");
    fp_axpy(out, 1, label_to_vector({*c, *f, layer}, th), th.p());
  }
  return out;
}

std::string label_product_to_string(const AnyonVector& v, const AnyonTheory& th) {
  if (th.p() == 2 && th.n_copies() % 2 == 0) {
    // Greedy per-layer decomposition over the 4-dim layer blocks.
    std::string out;
    int n_layers = th.n_copies() / 2;
    int n = th.n_copies();
    for (int l = 0; l < n_layers; ++l) {
      FpVec blk = {v[2 * l], v[2 * l + 1], v[n + 2 * l], v[n + 2 * l + 1]};
      if (fp_is_zero(blk)) continue;
      bool found = false;
      // single label?
      for (int c = 0; c < 3 && !found; ++c)
        for (int f = 0; f < 3 && !found; ++f)
          if (magic_square_vec(Color(c), Flavor(f)) == blk) {
            if (!out.empty()) out += '*';
            out += color_char(Color(c));
            out += flavor_char(Flavor(f));
            out += "_" + std::to_string(l + 1);
            found = true;
          }
      // pair of labels?
      for (int c1 = 0; c1 < 3 && !found; ++c1)
        for (int f1 = 0; f1 < 3 && !found; ++f1)
          for (int c2 = c1; c2 < 3 && !found; ++c2)
            for (int f2 = 0; f2 < 3 && !found; ++f2) {
              if (c1 == c2 && f2 <= f1) continue;
              if (fp_add(magic_square_vec(Color(c1), Flavor(f1)),
                         magic_square_vec(Color(c2), Flavor(f2)), 2) == blk) {
                if (!out.empty()) out += '*';
                out += color_char(Color(c1));
                out += flavor_char(Flavor(f1));
                out += "_" + std::to_string(l + 1);
                out += '*';
                out += color_char(Color(c2));
                out += flavor_char(Flavor(f2));
                out += "_" + std::to_string(l + 1);
                found = true;
              }
            }
      if (!found) return fp_to_string(v);
    }
    if (!out.empty()) return out;
  }
  return fp_to_string(v);
}

AnyonTheory color_code_theory(uint8_t p) { return AnyonTheory(p, 2); }
AnyonTheory bilayer_color_code_theory(uint8_t p) { return AnyonTheory(p, 4); }

}  // namespace dacodes

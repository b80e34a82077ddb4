#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dacodes/fp.hpp"

namespace dacodes {

struct InvalidLabel : Error {
  using Error::Error;
};
struct NotCondensible : Error {
  using Error::Error;
};

/// An anyon of the parent theory, as a coordinate vector in F_p^{2N}.
using AnyonVector = FpVec;

/// Abelian anyon theory of N copies of the Z_p toric code. Anyons are
/// vectors in F_p^{2N} with basis ordered as all e charges (copies 0..N-1)
/// followed by all m charges. Self statistics q(c) = c^T mu c, mutual
/// statistics <c1,c2> = c1^T lambda c2 with lambda = mu + mu^T.
class AnyonTheory {
 public:
  AnyonTheory(uint8_t p, int n_copies);

  uint8_t p() const { return p_; }
  int n_copies() const { return n_; }
  size_t dim() const { return 2 * size_t(n_); }

  const FpMat& mu() const { return mu_; }
  const FpMat& lambda() const { return lambda_; }

  uint8_t self_statistics(const AnyonVector& c) const;
  uint8_t braid(const AnyonVector& c1, const AnyonVector& c2) const;

  AnyonVector zero() const { return AnyonVector(dim(), 0); }
  /// Unit e (m) charge of one toric-code copy.
  AnyonVector e_charge(int copy) const;
  AnyonVector m_charge(int copy) const;

 private:
  uint8_t p_;
  int n_;
  FpMat mu_, lambda_;
};

/// Subspace of F_p^{2N} in canonical reduced-row-echelon form, so that
/// equality of subspaces is equality of the representation.
class Subspace {
 public:
  Subspace() = default;
  static Subspace span(const std::vector<AnyonVector>& gens, uint8_t p, size_t dim);
  static Subspace zero(uint8_t p, size_t dim) { return span({}, p, dim); }

  size_t rank() const { return basis_.rows(); }
  size_t ambient_dim() const { return basis_.cols(); }
  const FpMat& basis() const { return basis_; }
  std::vector<AnyonVector> basis_rows() const { return basis_.row_list(); }

  bool contains(const AnyonVector& v) const;
  bool contains_subspace(const Subspace& other) const;
  /// Canonical representative of v modulo this subspace.
  AnyonVector reduce(const AnyonVector& v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  /// All p^rank elements, in a deterministic order.
  std::vector<AnyonVector> elements() const;

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  std::string to_string() const { return basis_.to_string(); }

 private:
  FpMat basis_;  // RREF rows
};

bool is_condensible(const AnyonTheory& th, const Subspace& a);
Subspace orthogonal_complement(const AnyonTheory& th, const Subspace& a);
/// Lagrangian = condensible with dim = N (equivalently A = A^perp).
bool is_lagrangian(const AnyonTheory& th, const Subspace& a);

/// The child theory C = A^perp / A of a condensation A, with a fixed
/// quotient map kappa and section s (kappa . s = id). Statistics on the
/// child are induced through the section.
class ChildTheory {
 public:
  /// Deterministic default section: pivot-free coordinates of the RREF of
  /// A^perp relative to A.
  ChildTheory(const AnyonTheory& parent, const Subspace& a);
  /// Pinned section: section_images are parent vectors in A^perp whose
  /// classes form a basis of the quotient; child coordinate i maps to
  /// section_images[i].
  ChildTheory(const AnyonTheory& parent, const Subspace& a,
              const std::vector<AnyonVector>& section_images);

  const AnyonTheory& parent() const { return *parent_; }
  const Subspace& condensation() const { return a_; }
  const Subspace& orth() const { return orth_; }
  size_t dim() const { return 2 * n_child_; }  // 2 N_C
  size_t n_copies() const { return n_child_; }

  const std::vector<AnyonVector>& section_images() const { return sec_; }

  /// kappa: child coordinates of a parent vector (must lie in A^perp).
  FpVec kappa(const AnyonVector& v) const;
  /// section: parent representative of child coordinates.
  AnyonVector section(const FpVec& c) const;

  bool deconfined(const AnyonVector& v) const { return orth_.contains(v); }

  uint8_t q_child(const FpVec& c) const;
  uint8_t braid_child(const FpVec& c1, const FpVec& c2) const;
  /// Induced braiding Gram matrix on child coordinates.
  FpMat lambda_child() const;

 private:
  void finish_init();

  const AnyonTheory* parent_;
  Subspace a_, orth_;
  size_t n_child_;
  std::vector<AnyonVector> sec_;  // section images, one per child coordinate
  FpMat kappa_;                   // dim() x 2N matrix computing kappa
};

/// Magic-square label of a color-code boson: color row, Pauli-flavor
/// column, and which color-code layer of the parent it lives in (1-based).
enum class Color : uint8_t { R = 0, G = 1, B = 2 };
enum class Flavor : uint8_t { X = 0, Y = 1, Z = 2 };

struct AnyonLabel {
  Color color;
  Flavor flavor;
  int layer = 1;
};

char color_char(Color c);
char flavor_char(Flavor f);
std::optional<Color> parse_color(char c);
std::optional<Flavor> parse_flavor(char c);

/// Magic-square dictionary for one color-code layer, as a vector in that
/// layer's own F_p^4 (basis e1, e2, m1, m2).
FpVec magic_square_vec(Color c, Flavor f, uint8_t p = 2);

/// Embeds the label's magic-square vector into the parent theory, which
/// must have two toric-code copies per color-code layer.
AnyonVector label_to_vector(const AnyonLabel& label, const AnyonTheory& th);

/// Parses products like "rx_1", "rz_1*rz_2" into a parent vector.
AnyonVector parse_label_product(const std::string& text, const AnyonTheory& th);
/// Writes a vector as a label product if it decomposes over magic-square
/// labels, otherwise as raw coordinates.
std::string label_product_to_string(const AnyonVector& v, const AnyonTheory& th);

/// Parent theory of one color code (two toric-code copies).
AnyonTheory color_code_theory(uint8_t p = 2);
/// Parent theory of a bilayer color code (four toric-code copies).
AnyonTheory bilayer_color_code_theory(uint8_t p = 2);

}  // namespace dacodes

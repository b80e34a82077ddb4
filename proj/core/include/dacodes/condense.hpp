#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dacodes/anyon.hpp"

namespace dacodes {

struct NotReversible : Error {
  using Error::Error;
};
struct NotLagrangian : Error {
  using Error::Error;
};
struct NotAMagicSquareSymmetry : Error {
  using Error::Error;
};

/// A reversible pair of condensations (A1, A2): bases aligned so their
/// shared block Q = A1 cap A2 sits last, and the braiding block
/// beta[k][i] = <a2_k, a1_i> restricted to the non-Q part is invertible.
struct ReversiblePair {
  Subspace a1, a2, q;
  std::vector<AnyonVector> a1_basis, a2_basis;  // Q vectors placed last
  FpMat beta, beta_inv;                         // n_qbar x n_qbar
  size_t n_qbar = 0;
};

ReversiblePair check_reversible(const AnyonTheory& th, const Subspace& a1, const Subspace& a2);
bool is_reversible(const AnyonTheory& th, const Subspace& a1, const Subspace& a2);

/// Moves a representative L in A1^perp to the unique (mod Q) representative
/// of the same class lying in A1^perp cap A2^perp, by fusing with A1.
AnyonVector update_representative(const AnyonTheory& th, const ReversiblePair& pair,
                                  const AnyonVector& l);

/// Invertible, statistics-preserving map between child-theory coordinates.
struct ChildIsomorphism {
  FpMat matrix;  // target_coords = matrix * source_coords
};

ChildIsomorphism edge_isomorphism(const AnyonTheory& th, const ReversiblePair& pair,
                                  const ChildTheory& c1, const ChildTheory& c2);

/// Composite isomorphism C_first -> C_last of a pairwise-reversible chain of
/// condensations; an automorphism when the chain is closed.
FpMat sequence_isomorphism(const AnyonTheory& th, const std::vector<Subspace>& seq,
                           const ChildTheory& c_first, const ChildTheory& c_last);
FpMat sequence_automorphism(const AnyonTheory& th, const std::vector<Subspace>& seq,
                            const ChildTheory& base_child);

/// Symmetry of the color-code magic square: a row (color) permutation, a
/// column (flavor) permutation, and an optional transposition. There are
/// 6 * 6 * 2 = 72 of them.
struct AutomorphismName {
  std::array<uint8_t, 3> row_perm{0, 1, 2};  // image of r,g,b
  std::array<uint8_t, 3> col_perm{0, 1, 2};  // image of x,y,z
  bool transpose = false;

  bool is_identity() const;
  AutomorphismName compose(const AutomorphismName& first) const;  // this after first
  AutomorphismName inverse() const;
  /// Image of a magic-square label.
  AnyonLabel apply(const AnyonLabel& l) const;
  /// Matrix on effective-color-code child coordinates (e1,e2,m1,m2).
  FpMat to_matrix(uint8_t p = 2) const;
  /// Disjoint-cycle subscript, e.g. "(gb)", "(xr)(yg)(zb)"; "1" if identity.
  std::string to_string() const;
  static std::optional<AutomorphismName> parse(const std::string& s);

  auto operator<=>(const AutomorphismName&) const = default;
};

/// Classifies a 4x4 child-coordinate automorphism of the effective color
/// code as a magic-square symmetry.
AutomorphismName classify_automorphism(const FpMat& iso);

/// Vertices = condensations with pinned child coordinates; edges =
/// reversible pairs with the isomorphisms in both directions.
class CondensationGraph {
 public:
  struct Vertex {
    Subspace cond;
    std::string label;
    ChildTheory child;
  };
  struct Edge {
    int to;
    FpMat iso;  // child coords of `from` -> child coords of `to`
  };

  const AnyonTheory& theory() const { return theory_; }
  size_t num_vertices() const { return verts_.size(); }
  size_t num_edges() const { return n_edges_; }
  const Vertex& vertex(int i) const { return verts_[i]; }
  const std::vector<Edge>& edges_from(int i) const { return adj_[i]; }
  int degree(int i) const { return int(adj_[i].size()); }
  std::optional<int> find_vertex(const Subspace& s) const;

  std::string to_dot() const;

  friend CondensationGraph build_graph(
      const AnyonTheory& th, const std::vector<Subspace>& vertex_set,
      const std::function<std::optional<std::vector<AnyonVector>>(const AnyonTheory&,
                                                                  const Subspace&)>& sections);

 private:
  explicit CondensationGraph(const AnyonTheory& th) : theory_(th) {}
  AnyonTheory theory_;
  std::vector<Vertex> verts_;
  std::vector<std::vector<Edge>> adj_;
  size_t n_edges_ = 0;
};

/// Builds the graph over the given vertex set. `sections` may return pinned
/// section images per condensation (or nullopt for the deterministic
/// default).
CondensationGraph build_graph(
    const AnyonTheory& th, const std::vector<Subspace>& vertex_set,
    const std::function<std::optional<std::vector<AnyonVector>>(const AnyonTheory&,
                                                                const Subspace&)>& sections = {});

/// Pinned child coordinates used throughout: the effective-color-code basis
/// for the V(ZZ) condensation and the e/m convention for toric-code
/// children of single-boson condensations.
std::optional<std::vector<AnyonVector>> canonical_cc_sections(const AnyonTheory& th,
                                                              const Subspace& cond);

/// The nine single-boson condensations of one color code.
std::vector<Subspace> single_cc_vertices(const AnyonTheory& cc);
/// 81 intralayer product condensations plus the interlayer V(ZZ) vertex of
/// the bilayer parent; the V(ZZ) vertex is last.
std::vector<Subspace> da_vertices(const AnyonTheory& cc2);
Subspace vzz_condensation(const AnyonTheory& cc2);

struct WalkResult {
  FpMat automorphism;        // on base child coordinates
  size_t min_length;         // transitions of a shortest realizing walk
  std::vector<int> example;  // vertex ids of one shortest walk (incl. both base endpoints)
};

struct FpMatLess {
  bool operator()(const FpMat& a, const FpMat& b) const;
};

struct SearchOptions {
  size_t max_len = 5;
  /// Walks may not revisit the base vertex before their final step.
  bool interior_base_allowed = false;
  /// Optional edge veto; search skips transitions where this returns true.
  std::function<bool(int, int)> edge_excluded;
  int n_threads = 0;
};

/// Enumerates closed walks from `base` of length <= max_len and collects the
/// automorphism of each, keyed by its matrix on the base child coordinates.
std::map<FpMat, WalkResult, FpMatLess> search_sequences(const CondensationGraph& graph, int base,
                                                        const SearchOptions& opts);
std::map<FpMat, WalkResult, FpMatLess> search_sequences(const CondensationGraph& graph, int base,
                                                        size_t max_len,
                                                        bool interior_base_allowed = false,
                                                        int n_threads = 0);

/// Edge veto reproducing the published sequence tables: unfolding and
/// folding steps at the interlayer vertex use the flavor patterns
/// (X,X), (Y,Y) and (Y,X) but never (X,Y). Without it the search finds
/// shorter realizations for the four automorphisms conjugate to the
/// flavor swap (yz), via walks the tables do not contain.
std::function<bool(int, int)> tabulated_unfold_filter(const CondensationGraph& graph, int base);

/// Boundary condensations induced by a bulk sequence from an initial
/// Lagrangian B0 in the first child (coordinates of c0). Entry t is valid at
/// round t; consecutive entries are related by the update map.
std::vector<Subspace> boundary_sequence(const AnyonTheory& th, const std::vector<Subspace>& bulk,
                                        const ChildTheory& c0, const Subspace& b0_child);

/// Plain sequence file: one round per line, labels separated by ';',
/// 'VZZ' shorthand for the interlayer vertex. '#' starts a comment.
std::vector<Subspace> load_sequence(const std::string& text, const AnyonTheory& th);
std::string save_sequence(const std::vector<Subspace>& seq, const AnyonTheory& th);

/// Catalog file: `seq <name>` blocks with optional expected images of
/// (bx, rz, rx, bz), `round <...>` lines and a closing `end`.
struct CatalogEntry {
  std::string name;
  std::vector<Subspace> rounds;
  std::optional<std::array<AnyonLabel, 4>> expected_images;  // of bx, rz, rx, bz
};
std::vector<CatalogEntry> load_catalog(const std::string& text, const AnyonTheory& th);

/// Expected-image check: applies the automorphism to the labels bx, rz,
/// rx, bz and compares.
bool matches_images(const FpMat& aut, const std::array<AnyonLabel, 4>& images);

}  // namespace dacodes

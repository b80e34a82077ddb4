#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dacodes/pauli.hpp"

namespace dacodes {

struct LogicalLoss : Error {
  using Error::Error;
};
struct FrameMismatch : Error {
  using Error::Error;
};

struct MeasureResult {
  bool deterministic = false;
  size_t outcome_index = 0;
  /// Present iff deterministic: outcome indices whose parity is fixed in a
  /// noiseless run (includes outcome_index itself).
  std::optional<BitVec> detector_combo;
  /// The fixed parity: 1 when the combo generators multiply to minus the
  /// measured operator.
  bool detector_value = false;
  /// Seeded-generator dependence of the parity (over seed indices); a
  /// detector in the paper's sense requires this to be eliminated.
  BitVec detector_seed_combo;
};

/// Stabilizer group tracked sign-free, with a provenance vector per
/// generator recording which recorded measurement outcomes fix its sign.
class StabilizerState {
 public:
  explicit StabilizerState(size_t n_qubits = 0) : n_(n_qubits) {}

  size_t num_qubits() const { return n_; }
  size_t rank() const { return gens_.size(); }
  size_t num_outcomes() const { return n_outcomes_; }
  size_t num_seeds() const { return n_seeds_; }
  const std::vector<PauliOperator>& generators() const { return gens_; }
  const BitVec& provenance(size_t i) const { return prov_[i]; }

  /// Installs a known-sign stabilizer without a measurement record.
  void seed_generator(const PauliOperator& g);

  /// Projective measurement with symbolic outcome bookkeeping.
  MeasureResult measure(const PauliOperator& p);

  /// Membership of the sign-stripped group; the combination is over
  /// generator indices.
  std::optional<BitVec> in_group(const PauliOperator& p) const;
  bool commutes_with_all(const PauliOperator& p) const;

  /// Row space equality with another sign-stripped generator list.
  bool same_group(const std::vector<PauliOperator>& other) const;

 private:
  size_t n_;
  std::vector<PauliOperator> gens_;
  std::vector<BitVec> prov_;       // over measurement outcomes
  std::vector<BitVec> seed_prov_;  // over seeded generators
  size_t n_outcomes_ = 0;
  size_t n_seeds_ = 0;
};

struct LogicalFrame {
  struct Pair {
    PauliOperator x, z;
    std::string label;
  };
  std::vector<Pair> pairs;

  size_t k() const { return pairs.size(); }
};

/// Checks the frame algebra against a state: reps commute with every
/// generator, pairs anticommute exactly on their partner, no rep is a
/// stabilizer.
void validate_frame(const StabilizerState& state, const LogicalFrame& frame);

/// Symplectic basis of the centralizer modulo the group: one X/Z pair per
/// encoded qubit, labels q1..qk. Representative choice is deterministic.
LogicalFrame derive_frame(const StabilizerState& state);

/// Multiplies each representative by stabilizers so it commutes with every
/// operator of the next round. Throws LogicalLoss if some representative
/// cannot be repaired.
LogicalFrame update_logicals(const StabilizerState& state, const LogicalFrame& frame,
                             const std::vector<PauliOperator>& next_round);

/// Symplectic action of a schedule: expresses each final representative in
/// the initial frame modulo the stabilizer group. Columns are ordered
/// X_1..X_k, Z_1..Z_k; column j holds the expansion of the final rep j.
FpMat logical_action(const LogicalFrame& initial, const LogicalFrame& final_frame,
                     const StabilizerState& state);

/// Symplectic matrices of a few named gates on k qubits, for report labels.
FpMat symplectic_identity(size_t k);
FpMat symplectic_swap(size_t k, size_t a, size_t b);
FpMat symplectic_hadamard(size_t k, size_t q);
FpMat symplectic_cnot(size_t k, size_t control, size_t target);
FpMat symplectic_phase(size_t k, size_t q);  // S gate

}  // namespace dacodes

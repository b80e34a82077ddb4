#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dacodes/runner.hpp"

namespace dacodes {

struct FlavorUndefined : Error {
  using Error::Error;
};

/// One inferred-plaquette event inside a detector.
struct InferenceEvent {
  size_t round;
  int layer;
  Flavor flavor;
};

struct Detector {
  BitVec outcomes;  // over global outcome indices
  bool value = false;  // the fixed parity of the outcome set
  // Annotation (derived, 'mixed' when unclassifiable).
  std::optional<Color> color;
  std::string layer_flavors;  // per layer: x/y/z, '-' none, '?' mixed
  size_t first_round = 0, last_round = 0;
  std::vector<InferenceEvent> events;
};

struct DetectorSet {
  std::vector<Detector> detectors;
  std::vector<bool> outcome_excluded;  // discarded interlayer outcomes
  size_t n_outcomes = 0;
};

/// Deterministic-parity basis of a run: raw provenance detectors, reduced
/// to a canonical basis after discarding the outcomes of interlayer rounds
/// whose flanking rounds are identical.
DetectorSet extract_detectors(const RunResult& run, const LatticeSpec& lattice);

/// Basis error: single-qubit Pauli of the round-n flavor on that qubit,
/// inserted right after round n.
struct ErrorLocation {
  size_t qubit;
  size_t round;   // the gap "after this round"
  Flavor flavor;  // flavor measured on `qubit` at `round`

  auto operator<=>(const ErrorLocation&) const = default;
};

/// All basis locations of a run: every (qubit, round) the schedule touches,
/// except gaps after the final round.
std::vector<ErrorLocation> enumerate_error_locations(const RunResult& run,
                                                     const LatticeSpec& lattice);

/// Decomposes an arbitrary single-qubit Pauli between rounds into one or two
/// basis locations per the flavor rule.
std::vector<ErrorLocation> error_basis_decompose(const RunResult& run,
                                                 const LatticeSpec& lattice, size_t qubit,
                                                 size_t after_round, Flavor flavor);

/// Outcome flips of a basis error: measurements after the gap whose
/// operator anticommutes with it.
BitVec flipped_outcomes(const RunResult& run, const ErrorLocation& loc);
/// Detector syndrome of a set of locations.
BitVec syndrome(const DetectorSet& dets, const RunResult& run,
                const std::vector<ErrorLocation>& chain);

struct SensitivityMatrix {
  std::vector<ErrorLocation> columns;
  std::vector<BitVec> column_syndromes;  // over detector indices
};
SensitivityMatrix sensitivity_matrix(const DetectorSet& dets, const RunResult& run,
                                     const std::vector<ErrorLocation>& columns,
                                     int n_threads = 0);

/// Spacetime track of one logical representative (one slice per round).
struct LogicalMembrane {
  std::string label;
  std::vector<PauliOperator> slices;
};
std::vector<LogicalMembrane> membranes(const RunResult& run);

/// A chain is consequential when it anticommutes with some membrane at its
/// insertion slices (meaningful for syndrome-free chains).
bool is_consequential(const std::vector<LogicalMembrane>& mem,
                      const std::vector<ErrorLocation>& chain);

struct CorrectabilityReport {
  struct Violation {
    std::vector<ErrorLocation> chain;
    std::string reason;
  };
  std::vector<Violation> violations;
  size_t n_columns = 0;
  size_t n_classes = 0;
};

/// For every single-location column and adjacent same-qubit pair within
/// [window_begin, window_end) rounds: equal syndromes must differ by an
/// inconsequential chain, and syndrome-free chains must be inconsequential.
CorrectabilityReport verify_correctability(const DetectorSet& dets, const RunResult& run,
                                           const LatticeSpec& lattice,
                                           const std::vector<LogicalMembrane>& mem,
                                           size_t window_begin, size_t window_end);

}  // namespace dacodes

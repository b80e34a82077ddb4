#pragma once

#include <optional>

#include "dacodes/lattice.hpp"
#include "dacodes/stabilizer.hpp"

namespace dacodes {

enum class StartPolicy { Vacuum, ReferenceISG };

struct RunOptions {
  StartPolicy start = StartPolicy::Vacuum;
  /// Seeded generators when starting from the reference group.
  std::vector<PauliOperator> reference_group;
  /// Track a logical frame through the run (must be valid for the start).
  std::optional<LogicalFrame> initial_frame;
};

struct OutcomeInfo {
  size_t round;
  size_t index_in_round;
};

struct RunResult {
  std::vector<std::vector<PauliOperator>> compiled;
  StabilizerState state;                           // final
  std::vector<size_t> rank_after;                  // per round
  std::vector<std::vector<MeasureResult>> events;  // per round, per measurement
  std::vector<OutcomeInfo> outcomes;               // by global outcome index
  std::vector<size_t> round_first_outcome;         // outcome index range starts
  /// Sign-stripped ISG snapshot after each round.
  std::vector<std::vector<PauliOperator>> isg_after;
  /// Frame valid in the interval after round t (tracks membrane slices);
  /// empty when not tracking.
  std::vector<LogicalFrame> frame_after;

  const PauliOperator& outcome_op(size_t k) const {
    return compiled[outcomes[k].round][outcomes[k].index_in_round];
  }
};

RunResult run_schedule(const LatticeSpec& lattice, const ScheduleSpec& schedule,
                       const RunOptions& opts);

}  // namespace dacodes

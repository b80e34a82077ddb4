#include "dacodes/runner.hpp"

namespace dacodes {

RunResult run_schedule(const LatticeSpec& lattice, const ScheduleSpec& schedule,
                       const RunOptions& opts) {
  RunResult res;
  res.compiled = compile_schedule(schedule, lattice);
  res.state = StabilizerState(lattice.num_qubits());
  if (opts.start == StartPolicy::ReferenceISG) {
    for (const auto& g : opts.reference_group) res.state.seed_generator(g);
  }
  std::optional<LogicalFrame> frame = opts.initial_frame;
  if (frame) validate_frame(res.state, *frame);

  for (size_t t = 0; t < res.compiled.size(); ++t) {
    if (frame) frame = update_logicals(res.state, *frame, res.compiled[t]);
    res.round_first_outcome.push_back(res.state.num_outcomes());
    std::vector<MeasureResult> round_events;
    for (size_t i = 0; i < res.compiled[t].size(); ++i) {
      MeasureResult mr = res.state.measure(res.compiled[t][i]);
      res.outcomes.push_back({t, i});
      round_events.push_back(std::move(mr));
    }
    res.events.push_back(std::move(round_events));
    res.rank_after.push_back(res.state.rank());
    res.isg_after.push_back(res.state.generators());
    if (frame) res.frame_after.push_back(*frame);
  }
  return res;
}

}  // namespace dacodes

#pragma once

#include <optional>
#include <vector>

#include "dacodes/stabilizer.hpp"

namespace dacodes {

struct DistanceResult {
  /// Smallest weight of an operator commuting with the whole group but not
  /// in it, or nullopt if none exists up to w_max.
  std::optional<int> distance;
  PauliOperator witness;
};

/// Brute-force minimum-weight logical search over supports drawn from
/// `support_qubits`. Plain enumeration up to weight 5, meet-in-the-middle
/// above. Parallel over leading support positions; thread count does not
/// affect the result.
DistanceResult code_distance(const StabilizerState& state, int w_max,
                             const std::vector<size_t>& support_qubits, int n_threads = 0);

/// Independent check used against every reported witness: commutes with all
/// generators and increases the rank when appended to the group.
bool is_nontrivial_logical(const StabilizerState& state, const PauliOperator& p);

}  // namespace dacodes

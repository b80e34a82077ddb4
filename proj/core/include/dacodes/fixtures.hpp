#pragma once

#include <map>
#include <string>

#include "dacodes/condense.hpp"
#include "dacodes/lattice.hpp"
#include "dacodes/stabilizer.hpp"

namespace dacodes {

struct UnknownFixture : Error {
  using Error::Error;
};

/// A lattice bundled with its schedule catalog and, where defined, the
/// reference topological stabilizer group and logical frame.
struct Fixture {
  std::string name;
  LatticeSpec lattice;
  std::map<std::string, ScheduleSpec> schedules;
  /// Full topological group at the interlayer (color-code) rounds.
  std::vector<PauliOperator> reference_group;
  std::optional<LogicalFrame> reference_frame;
};

/// `torus36`, `rp2_32`, `triangle24`, `honeycomb33`, or `torus:a,b`.
Fixture builtin_fixture(const std::string& name);
std::vector<std::string> builtin_fixture_names();

/// Bulk condensation sequences bound to schedule names, for cross-layer
/// consistency checks (anyon automorphism vs microscopic action).
std::map<std::string, std::vector<Subspace>> builtin_bulk_sequences(const AnyonTheory& cc2);

/// Covering lattice of the cross-cap fixture: a chamfered-cube sphere
/// whose antipodal identification yields the 16-vertex patch.
LatticeSpec crosscap_cover(int layers);

/// Closed colored string on a generated torus: the given flavor per layer
/// ('i' skips a layer) along a non-contractible colored walk in lattice
/// direction 0 or 1.
PauliOperator torus_string(const LatticeSpec& lattice, int a, int b, Color color,
                           const std::string& layer_flavors, int direction);

/// Reference group of the interlayer color-code round on a closed bilayer
/// lattice: vertical ZZ checks plus both plaquette families.
std::vector<PauliOperator> interlayer_reference_group(const LatticeSpec& lattice);

/// Gate label for a 4-qubit symplectic action under the torus frame
/// convention, when it matches a known entry.
std::optional<std::string> torus_gate_name(const FpMat& action);

/// Symplectic action on the torus frame predicted by a magic-square
/// automorphism: anyon class labels tensor homology directions.
FpMat predicted_torus_action(const AutomorphismName& aut);

}  // namespace dacodes

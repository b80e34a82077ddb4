#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dacodes/anyon.hpp"
#include "dacodes/pauli.hpp"

namespace dacodes {

struct ParseError : Error {
  using Error::Error;
};
struct InvariantViolation : Error {
  using Error::Error;
};
struct IncompatibleDimensions : Error {
  using Error::Error;
};
struct UnknownRegion : Error {
  using Error::Error;
};
struct NonCommutingRound : Error {
  using Error::Error;
};

enum class VertexRole : uint8_t { Bulk, Dock, Dead };

/// A layered three-colorable lattice patch: trivalent bulk vertices,
/// colored edges and plaquettes, optional docking/dead boundary vertices,
/// named boundary regions and vertex identifications.
class LatticeSpec {
 public:
  struct VertexInfo {
    VertexRole role = VertexRole::Bulk;
    Color dock_color = Color::R;  // meaningful for docks only
  };
  struct EdgeInfo {
    int v, w;
    Color color;
  };
  struct PlaquetteInfo {
    Color color;
    std::vector<int> vertices;  // boundary cycle
  };
  struct Region {
    std::string name;
    Flavor tag;
    std::vector<int> vertices;
  };

  int layers = 1;
  std::vector<VertexInfo> vertices;
  std::vector<EdgeInfo> edges;
  std::vector<PlaquetteInfo> plaquettes;
  std::vector<Region> boundaries;
  std::vector<std::pair<int, int>> identifications;  // kept for round-trips

  size_t num_vertices() const { return vertices.size(); }
  size_t num_qubits() const { return vertices.size() * size_t(layers); }
  size_t qubit(int v, int layer) const { return size_t(v) * layers + layer; }

  std::vector<int> live_vertices() const;
  std::vector<size_t> live_qubits() const;
  const Region* find_region(const std::string& name) const;

  /// Edge three-coloring, plaquette alternation, bulk trivalence.
  void validate() const;
};

/// Honeycomb lattice on a torus: a x b hexagonal plaquettes (both multiples
/// of three for the face three-coloring), 2ab vertices per layer.
LatticeSpec gen_torus_honeycomb(int a, int b, int layers);

/// Vertex identification pass (used for the cross-cap fixtures): merges the
/// second vertex of each pair into the first, deduplicating edges and
/// plaquettes.
LatticeSpec apply_identifications(const LatticeSpec& spec);

LatticeSpec load_lattice(const std::string& text);
std::string save_lattice(const LatticeSpec& spec);

/// One measurement pattern of a round.
struct MeasurementSpec {
  enum class Kind : uint8_t { Edge, Vertex, Explicit } kind = Kind::Edge;
  // Edge: color/flavor/layer, or a flavor-per-layer string for boundary
  // checks spanning both layers. Vertex: flavor per layer ('I' = skip).
  Color color = Color::R;
  Flavor flavor = Flavor::X;
  int layer = 1;
  std::string vertex_flavors;               // Vertex kind or multi-layer Edge
  std::vector<std::pair<size_t, int>> explicit_pauli;  // qubit, 1/2/3
  std::string region;                       // empty = all live vertices
};

struct ScheduleSpec {
  struct Round {
    std::string label;
    std::vector<MeasurementSpec> specs;
  };
  std::vector<Round> rounds;
  std::optional<size_t> reference_round;

  ScheduleSpec() = default;
  /// Concatenation that merges equal adjacent rounds at the seams.
  static ScheduleSpec concatenate(const std::vector<ScheduleSpec>& blocks);
};

ScheduleSpec load_schedule(const std::string& text);
std::string save_schedule(const ScheduleSpec& spec);

/// Expands a schedule into per-round measurement lists and checks that each
/// round commutes internally.
std::vector<std::vector<PauliOperator>> compile_schedule(const ScheduleSpec& schedule,
                                                         const LatticeSpec& lattice);

}  // namespace dacodes

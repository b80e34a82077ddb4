#include "dacodes/fixtures.hpp"

#include <algorithm>
#include <sstream>

namespace dacodes {

namespace {

MeasurementSpec edge_spec(Color c, Flavor f, int layer, std::string region = "") {
  MeasurementSpec m;
  m.kind = MeasurementSpec::Kind::Edge;
  m.color = c;
  m.flavor = f;
  m.layer = layer;
  m.region = std::move(region);
  return m;
}

MeasurementSpec vertex_spec(const std::string& flavors, std::string region = "") {
  MeasurementSpec m;
  m.kind = MeasurementSpec::Kind::Vertex;
  m.vertex_flavors = flavors;
  m.region = std::move(region);
  return m;
}

std::string spec_label(const MeasurementSpec& m) {
  std::string s;
  switch (m.kind) {
    case MeasurementSpec::Kind::Edge:
      s = std::string("E") + color_char(m.color) + "(" +
          char(std::toupper(flavor_char(m.flavor))) + std::to_string(m.layer) + ")";
      break;
    case MeasurementSpec::Kind::Vertex: {
      s = "V(";
      for (char ch : m.vertex_flavors) s += (ch == 'i') ? '-' : char(std::toupper(ch));
      s += ")";
      break;
    }
    case MeasurementSpec::Kind::Explicit:
      s = "P";
      break;
  }
  if (!m.region.empty()) s += "@" + m.region;
  return s;
}

ScheduleSpec::Round make_round(std::vector<MeasurementSpec> specs) {
  std::string label;
  for (const auto& m : specs) {
    if (!label.empty()) label += "+";
    label += spec_label(m);
  }
  return ScheduleSpec::Round{label, std::move(specs)};
}

// Bulk-only schedule for closed bilayer lattices: a V(ZZ)-bounded block
// whose interior rounds condense one boson per layer. 'i' skips a layer.
ScheduleSpec bilayer_block(const std::vector<std::vector<MeasurementSpec>>& interior) {
  ScheduleSpec s;
  s.rounds.push_back(make_round({vertex_spec("zz")}));
  for (auto specs : interior) s.rounds.push_back(make_round(std::move(specs)));
  s.rounds.push_back(make_round({vertex_spec("zz")}));
  s.reference_round = s.rounds.size() - 1;
  return s;
}

std::map<std::string, ScheduleSpec> closed_bilayer_catalog() {
  using C = Color;
  using F = Flavor;
  std::map<std::string, ScheduleSpec> cat;
  cat["vzz"] = bilayer_block({});
  cat["phi_xr_yg_zb"] = bilayer_block({
      {edge_spec(C::R, F::X, 1), edge_spec(C::B, F::X, 2)},
      {edge_spec(C::G, F::Y, 1)},
      {edge_spec(C::B, F::Z, 1), edge_spec(C::G, F::Z, 2)},
      {edge_spec(C::R, F::X, 1), edge_spec(C::B, F::X, 2)},
  });
  cat["phi_zr_yg_xb"] = bilayer_block({
      {edge_spec(C::R, F::X, 1), edge_spec(C::B, F::X, 2)},
      {edge_spec(C::R, F::Y, 2)},
      {edge_spec(C::B, F::Z, 1), edge_spec(C::G, F::Z, 2)},
      {edge_spec(C::R, F::X, 1), edge_spec(C::B, F::X, 2)},
  });
  cat["phi_gb"] = bilayer_block({
      {edge_spec(C::R, F::X, 1), edge_spec(C::B, F::X, 2)},
      {edge_spec(C::B, F::Z, 1), edge_spec(C::R, F::Y, 2)},
      {edge_spec(C::R, F::X, 1), edge_spec(C::G, F::X, 2)},
  });
  cat["padding"] = bilayer_block({
      {edge_spec(C::R, F::X, 1), edge_spec(C::B, F::X, 2)},
      {edge_spec(C::G, F::Y, 1), edge_spec(C::R, F::Y, 2)},
      {edge_spec(C::B, F::Z, 1), edge_spec(C::G, F::Z, 2)},
      {edge_spec(C::R, F::X, 1), edge_spec(C::B, F::X, 2)},
  });
  // Padded blocks and the double padding.
  auto pad = cat["padding"];
  for (const char* g : {"phi_xr_yg_zb", "phi_zr_yg_xb", "phi_gb"}) {
    ScheduleSpec padded = ScheduleSpec::concatenate({pad, cat[g], pad});
    padded.reference_round = padded.rounds.size() - 1;
    cat[std::string("padded_") + (g + 4)] = padded;
  }
  ScheduleSpec pad2 = ScheduleSpec::concatenate({pad, pad});
  pad2.reference_round = pad2.rounds.size() - 1;
  cat["pad2"] = pad2;
  return cat;
}

std::map<std::string, std::vector<MeasurementSpec>> interior_round_specs();

// Chamfered cube: 6 squares (one per cube face) and 12 hexagons (one per
// cube edge), trivalent with the colex face coloring by axis. Its
// antipodal quotient is the cross-cap fixture.
LatticeSpec chamfered_cube(int layers, bool with_identifications) {
  LatticeSpec spec;
  spec.layers = layers;
  // Cube corners are 3-bit masks; faces are (axis, sign).
  auto corner_on_face = [](int c, int axis, int sign) { return ((c >> axis) & 1) == sign; };
  auto face_id = [](int axis, int sign) { return axis * 2 + sign; };
  // Face-corner vertices then the 8 corner vertices.
  std::map<std::pair<int, int>, int> fc_index;
  for (int axis = 0; axis < 3; ++axis)
    for (int sign = 0; sign < 2; ++sign)
      for (int c = 0; c < 8; ++c)
        if (corner_on_face(c, axis, sign))
          fc_index[{face_id(axis, sign), c}] = int(fc_index.size());
  int corner_base = int(fc_index.size());  // 24
  spec.vertices.assign(32, {});

  auto axis_color = [](int axis) { return Color(axis); };
  auto third = [](Color a, Color b) { return Color(3 - int(a) - int(b)); };

  // Square plaquettes and their edges.
  for (int axis = 0; axis < 3; ++axis)
    for (int sign = 0; sign < 2; ++sign) {
      int f = face_id(axis, sign);
      int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
      // Corners of the face in cyclic order.
      int base = sign << axis;
      std::vector<int> cyc = {base, base | (1 << a1), base | (1 << a1) | (1 << a2),
                              base | (1 << a2)};
      std::vector<int> verts;
      for (int c : cyc) verts.push_back(fc_index[{f, c}]);
      spec.plaquettes.push_back({axis_color(axis), verts});
      for (int k = 0; k < 4; ++k) {
        int c1 = cyc[k], c2 = cyc[(k + 1) % 4];
        int dir = 0;
        while (((c1 ^ c2) & (1 << dir)) == 0) ++dir;
        spec.edges.push_back(
            {verts[k], verts[(k + 1) % 4], third(axis_color(axis), axis_color(dir))});
      }
    }
  // Corner edges and hexagon plaquettes.
  for (int c = 0; c < 8; ++c)
    for (int axis = 0; axis < 3; ++axis) {
      int sign = (c >> axis) & 1;
      spec.edges.push_back(
          {corner_base + c, fc_index[{face_id(axis, sign), c}], axis_color(axis)});
    }
  for (int axis = 0; axis < 3; ++axis)
    for (int c = 0; c < 8; ++c) {
      int c2 = c | (1 << axis);
      if (c2 == c || c2 < c) continue;  // enumerate each cube edge once
      int c1 = c;
      int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
      int f1 = face_id(a1, (c1 >> a1) & 1);
      int f2 = face_id(a2, (c1 >> a2) & 1);
      std::vector<int> verts = {corner_base + c1,     fc_index[{f1, c1}], fc_index[{f1, c2}],
                                corner_base + c2,     fc_index[{f2, c2}], fc_index[{f2, c1}]};
      spec.plaquettes.push_back({axis_color(axis), verts});
    }

  if (with_identifications) {
    for (int axis = 0; axis < 3; ++axis)
      for (int c = 0; c < 8; ++c)
        if (corner_on_face(c, axis, 0)) {
          int v = fc_index[{face_id(axis, 0), c}];
          int w = fc_index[{face_id(axis, 1), c ^ 7}];
          spec.identifications.push_back({v, w});
        }
    for (int c = 0; c < 8; ++c)
      if (c < (c ^ 7)) spec.identifications.push_back({corner_base + c, corner_base + (c ^ 7)});
  }
  spec.validate();
  return spec;
}

}  // namespace

LatticeSpec crosscap_cover(int layers) { return chamfered_cube(layers, true); }

PauliOperator torus_string(const LatticeSpec& lattice, int a, int b, Color color,
                           const std::string& layer_flavors, int direction) {
  if (int(layer_flavors.size()) != lattice.layers)
    throw DimensionMismatch("torus_string: flavor string length");
  auto mod = [](int x, int m) { return ((x % m) + m) % m; };
  auto vid = [&](int i, int j, int up) { return (mod(i, a) * b + mod(j, b)) * 2 + up; };

  // Start at the least colored face; the walk alternates the two step types
  // whose displacements sum to one lattice period.
  int i = int(color), j = 0;  // face (c, 0) has color (i - j) mod 3 = c
  PauliOperator out(lattice.num_qubits());
  auto apply_edge = [&](int v, int w) {
    PauliOperator e(lattice.num_qubits());
    for (int l = 0; l < lattice.layers; ++l) {
      char ch = layer_flavors[l];
      if (ch == 'i') continue;
      auto f = parse_flavor(ch);
      if (!f) throw Error("torus_string: bad flavor string");
      e.set_pauli(lattice.qubit(v, l), int(*f) + 1);
      e.set_pauli(lattice.qubit(w, l), int(*f) + 1);
    }
    out *= e;
  };

  int steps = (direction == 0 ? a : b) / 3 * 2;
  for (int s = 0; s < steps; ++s) {
    if (s % 2 == 0) {
      // step (+1,+1): edge u(i,j) - d(i,j)
      apply_edge(vid(i, j, 1), vid(i, j, 0));
      i += 1;
      j += 1;
    } else if (direction == 0) {
      // step (+2,-1): edge u(i+1,j-1) - d(i,j-1)
      apply_edge(vid(i + 1, j - 1, 1), vid(i, j - 1, 0));
      i += 2;
      j -= 1;
    } else {
      // step (-1,+2): edge u(i-1,j+1) - d(i-1,j)
      apply_edge(vid(i - 1, j + 1, 1), vid(i - 1, j, 0));
      i -= 1;
      j += 2;
    }
  }
  return out;
}

std::vector<PauliOperator> interlayer_reference_group(const LatticeSpec& lattice) {
  if (lattice.layers != 2)
    throw Error("interlayer_reference_group: needs a bilayer lattice");
  std::vector<PauliOperator> out;
  size_t n = lattice.num_qubits();
  for (int v : lattice.live_vertices()) {
    PauliOperator p(n);
    p.set_pauli(lattice.qubit(v, 0), 3);
    p.set_pauli(lattice.qubit(v, 1), 3);
    out.push_back(std::move(p));
  }
  for (const auto& pl : lattice.plaquettes) {
    PauliOperator px(n), pz(n);
    for (int v : pl.vertices) {
      px.set_pauli(lattice.qubit(v, 0), 1);
      px.set_pauli(lattice.qubit(v, 1), 1);
      pz.set_pauli(lattice.qubit(v, 0), 3);
    }
    out.push_back(std::move(px));
    out.push_back(std::move(pz));
  }
  return out;
}

FpMat predicted_torus_action(const AutomorphismName& aut) {
  FpMat phi = aut.to_matrix();
  // Frame rows/cols: X1..X4, Z1..Z4 with
  //   X1=(m1,B) X2=(m2,B) X3=(m1,A) X4=(m2,A)
  //   Z1=(e1,A) Z2=(e2,A) Z3=(e1,B) Z4=(e2,B)
  // anyon coordinate index (e1,e2,m1,m2) and direction A=0,B=1 -> frame row.
  auto frame_row = [](int anyon, int dir) {
    static const int rowA[4] = {4, 5, 2, 3};
    static const int rowB[4] = {6, 7, 0, 1};
    return dir == 0 ? rowA[anyon] : rowB[anyon];
  };
  static const std::pair<int, int> col_source[8] = {
      {2, 1}, {3, 1}, {2, 0}, {3, 0},  // X1..X4
      {0, 0}, {1, 0}, {0, 1}, {1, 1},  // Z1..Z4
  };
  FpMat out(8, 8, 2);
  for (int col = 0; col < 8; ++col) {
    auto [anyon, dir] = col_source[col];
    FpVec src(4, 0);
    src[anyon] = 1;
    FpVec img = phi.mul_vec(src);
    for (int k = 0; k < 4; ++k)
      if (img[k]) out.at(frame_row(k, dir), col) = 1;
  }
  return out;
}

std::optional<std::string> torus_gate_name(const FpMat& action) {
  if (action == symplectic_identity(4)) return "I";
  FpMat h13_swap = symplectic_hadamard(4, 0)
                       .mul(symplectic_hadamard(4, 2))
                       .mul(symplectic_swap(4, 0, 2));
  if (action == h13_swap) return "(H1xH3).SWAP13";
  FpMat h24_swap = symplectic_hadamard(4, 1)
                       .mul(symplectic_hadamard(4, 3))
                       .mul(symplectic_swap(4, 1, 3));
  if (action == h24_swap) return "(H2xH4).SWAP24";
  FpMat cnots = symplectic_cnot(4, 0, 1).mul(symplectic_cnot(4, 2, 3));
  if (action == cnots) return "CNOT12.CNOT34";
  // Fall back to the automorphism label when the action is induced by one.
  for (int t = 0; t < 2; ++t) {
    AutomorphismName n;
    n.transpose = t;
    std::array<uint8_t, 3> perm = {0, 1, 2};
    std::sort(perm.begin(), perm.end());
    do {
      n.row_perm = perm;
      std::array<uint8_t, 3> cperm = {0, 1, 2};
      std::sort(cperm.begin(), cperm.end());
      do {
        n.col_perm = cperm;
        if (predicted_torus_action(n) == action) return "aut " + n.to_string();
      } while (std::next_permutation(cperm.begin(), cperm.end()));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return std::nullopt;
}

std::map<std::string, std::vector<Subspace>> builtin_bulk_sequences(const AnyonTheory& cc2) {
  auto seq = [&](const char* text) { return load_sequence(text, cc2); };
  std::map<std::string, std::vector<Subspace>> out;
  out["vzz"] = seq("VZZ\nVZZ\n");
  out["phi_xr_yg_zb"] = seq("VZZ\nrx_1; bx_2\ngy_1; bx_2\nbz_1; gz_2\nrx_1; bx_2\nVZZ\n");
  out["phi_zr_yg_xb"] = seq("VZZ\nrx_1; bx_2\nrx_1; ry_2\nbz_1; gz_2\nrx_1; bx_2\nVZZ\n");
  out["phi_gb"] = seq("VZZ\nrx_1; bx_2\nbz_1; ry_2\nrx_1; gx_2\nVZZ\n");
  out["padding"] = seq("VZZ\nrx_1; bx_2\ngy_1; ry_2\nbz_1; gz_2\nrx_1; bx_2\nVZZ\n");
  out["phi_rb"] = seq(
      "VZZ\nbx_1; rx_2\ngz_1; bz_2\nrx_1; gx_2\nbz_1; rz_2\nrx_1; bx_2\nVZZ\n");
  out["phi_rbg"] = seq("VZZ\nrx_1; gx_2\ngz_1; bz_2\nbx_1; rx_2\nVZZ\n");
  out["phi_xz"] = seq("VZZ\nrx_1; bx_2\nby_1; ry_2\nVZZ\n");
  out["phi_xyz"] = seq("VZZ\nry_1; gx_2\ngz_1; bz_2\nbx_1; rx_2\nry_1; gy_2\nVZZ\n");
  // Padded compositions merge the shared interlayer rounds.
  auto compose = [&](std::initializer_list<const char*> names) {
    std::vector<Subspace> total;
    for (const char* n : names) {
      const auto& block = out[n];
      size_t start = total.empty() ? 0 : 1;
      if (!total.empty() && !(total.back() == block.front()))
        throw Error("builtin_bulk_sequences: seam mismatch");
      for (size_t i = start; i < block.size(); ++i) total.push_back(block[i]);
    }
    return total;
  };
  out["pad2"] = compose({"padding", "padding"});
  out["padded_xr_yg_zb"] = compose({"padding", "phi_xr_yg_zb", "padding"});
  out["padded_zr_yg_xb"] = compose({"padding", "phi_zr_yg_xb", "padding"});
  out["padded_gb"] = compose({"padding", "phi_gb", "padding"});
  return out;
}

Fixture builtin_fixture(const std::string& name) {
  Fixture fx;
  fx.name = name;
  if (name == "torus36" || name.rfind("torus:", 0) == 0) {
    int a = 3, b = 3;
    if (name.rfind("torus:", 0) == 0) {
      auto rest = name.substr(6);
      auto comma = rest.find(',');
      if (comma == std::string::npos) throw UnknownFixture("torus:a,b expected");
      a = std::stoi(rest.substr(0, comma));
      b = std::stoi(rest.substr(comma + 1));
    }
    fx.lattice = gen_torus_honeycomb(a, b, 2);
    fx.schedules = closed_bilayer_catalog();
    fx.reference_group = interlayer_reference_group(fx.lattice);
    // Logical frame: anyon class x homology direction, in the convention
    // X1=(bx,B) X2=(rx,B) X3=(bx,A) X4=(rx,A), Z1=(rz,A) Z2=(bz,A)
    // Z3=(rz,B) Z4=(bz,B).
    LogicalFrame frame;
    auto str = [&](Color c, const char* fl, int dir) {
      return torus_string(fx.lattice, a, b, c, fl, dir);
    };
    frame.pairs.push_back({str(Color::B, "xx", 1), str(Color::R, "zi", 0), "q1"});
    frame.pairs.push_back({str(Color::R, "xx", 1), str(Color::B, "zi", 0), "q2"});
    frame.pairs.push_back({str(Color::B, "xx", 0), str(Color::R, "zi", 1), "q3"});
    frame.pairs.push_back({str(Color::R, "xx", 0), str(Color::B, "zi", 1), "q4"});
    fx.reference_frame = frame;
    return fx;
  }
  if (name == "honeycomb33") {
    fx.lattice = gen_torus_honeycomb(3, 3, 1);
    ScheduleSpec period;
    period.rounds.push_back(make_round({edge_spec(Color::R, Flavor::X, 1)}));
    period.rounds.push_back(make_round({edge_spec(Color::G, Flavor::Y, 1)}));
    period.rounds.push_back(make_round({edge_spec(Color::B, Flavor::Z, 1)}));
    fx.schedules["period"] = period;
    return fx;
  }
  if (name == "rp2_32") {
    LatticeSpec cube = chamfered_cube(2, true);
    fx.lattice = apply_identifications(cube);
    fx.schedules = closed_bilayer_catalog();
    fx.reference_group = interlayer_reference_group(fx.lattice);
    return fx;
  }
  if (name == "triangle24") {
    // Three-hexagon patch with Pauli boundaries: one red and one green
    // plaquette survive whole, the blue one is cut open at the Y side,
    // whose two remaining vertices hang off single edges and act as
    // docking sites for the composite strings.
    LatticeSpec L;
    L.layers = 2;
    L.vertices.assign(12, {});
    L.vertices[11] = {VertexRole::Dock, Color::R};
    L.vertices[10] = {VertexRole::Dock, Color::G};
    auto add = [&](int v, int w, Color c) { L.edges.push_back({v, w, c}); };
    add(0, 7, Color::R);
    add(0, 1, Color::G);
    add(0, 5, Color::B);
    add(3, 2, Color::G);
    add(2, 1, Color::B);
    add(1, 11, Color::R);
    add(10, 7, Color::G);
    add(7, 6, Color::B);
    add(6, 9, Color::R);
    add(9, 8, Color::B);
    add(8, 5, Color::R);
    add(5, 4, Color::G);
    add(4, 3, Color::B);
    L.plaquettes.push_back({Color::R, {0, 1, 2, 3, 4, 5}});
    L.plaquettes.push_back({Color::G, {6, 7, 0, 5, 8, 9}});
    L.boundaries.push_back({"X", Flavor::X, {2, 3, 4}});
    L.boundaries.push_back({"Z", Flavor::Z, {6, 9, 8}});
    L.boundaries.push_back({"Y", Flavor::Y, {11, 10}});
    L.validate();
    fx.lattice = L;

    using C = Color;
    using F = Flavor;
    auto cc_round = make_round({vertex_spec("zz"), vertex_spec("xx", "X"), vertex_spec("xy", "Y")});
    auto x_round = [&](Color c1, Color c2, std::vector<MeasurementSpec> extra = {}) {
      std::vector<MeasurementSpec> specs = {edge_spec(c1, F::X, 1), edge_spec(c2, F::X, 2),
                                            vertex_spec("xi", "X"), vertex_spec("ix", "X")};
      for (auto& m : extra) specs.push_back(std::move(m));
      return make_round(std::move(specs));
    };
    auto z_round = [&](Color c1, Color c2, std::vector<MeasurementSpec> extra = {}) {
      std::vector<MeasurementSpec> specs = {edge_spec(c1, F::Z, 1), edge_spec(c2, F::Z, 2),
                                            vertex_spec("zi", "Z"), vertex_spec("iz", "Z")};
      for (auto& m : extra) specs.push_back(std::move(m));
      return make_round(std::move(specs));
    };

    ScheduleSpec rbg;
    rbg.rounds.push_back(cc_round);
    rbg.rounds.push_back(x_round(C::R, C::G));
    rbg.rounds.push_back(z_round(C::G, C::B, {vertex_spec("zx", "Y")}));
    rbg.rounds.push_back(x_round(C::B, C::R, {vertex_spec("xx", "Y")}));
    rbg.rounds.push_back(cc_round);
    rbg.reference_round = rbg.rounds.size() - 1;
    fx.schedules["phi_rbg"] = rbg;

    ScheduleSpec rb;
    rb.rounds.push_back(cc_round);
    rb.rounds.push_back(x_round(C::B, C::R));
    rb.rounds.push_back(z_round(C::G, C::B, {vertex_spec("zx", "Y")}));
    rb.rounds.push_back(x_round(C::R, C::G));
    rb.rounds.push_back(z_round(C::B, C::R));
    rb.rounds.push_back(x_round(C::R, C::B));
    rb.rounds.push_back(cc_round);
    rb.reference_round = rb.rounds.size() - 1;
    fx.schedules["phi_rb"] = rb;
    return fx;
  }
  throw UnknownFixture("unknown fixture '" + name + "'");
}

std::vector<std::string> builtin_fixture_names() {
  return {"torus36", "rp2_32", "triangle24", "honeycomb33"};
}

}  // namespace dacodes

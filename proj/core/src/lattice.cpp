#include "dacodes/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dacodes {

std::vector<int> LatticeSpec::live_vertices() const {
  std::vector<int> out;
  for (size_t v = 0; v < vertices.size(); ++v)
    if (vertices[v].role != VertexRole::Dead) out.push_back(int(v));
  return out;
}

std::vector<size_t> LatticeSpec::live_qubits() const {
  std::vector<size_t> out;
  for (int v : live_vertices())
    for (int l = 0; l < layers; ++l) out.push_back(qubit(v, l));
  return out;
}

const LatticeSpec::Region* LatticeSpec::find_region(const std::string& name) const {
  for (const auto& r : boundaries)
    if (r.name == name) return &r;
  return nullptr;
}

void LatticeSpec::validate() const {
  size_t nv = vertices.size();
  std::vector<std::array<int, 3>> per_color(nv, {0, 0, 0});
  for (const auto& e : edges) {
    if (e.v < 0 || e.w < 0 || size_t(e.v) >= nv || size_t(e.w) >= nv || e.v == e.w)
      throw InvariantViolation("lattice: bad edge endpoints");
    per_color[e.v][int(e.color)]++;
    per_color[e.w][int(e.color)]++;
  }
  for (size_t v = 0; v < nv; ++v) {
    for (int c = 0; c < 3; ++c)
      if (per_color[v][c] > 1)
        throw InvariantViolation("lattice: duplicated edge color at a vertex");
    int deg = per_color[v][0] + per_color[v][1] + per_color[v][2];
    if (vertices[v].role == VertexRole::Bulk && deg != 3) {
      // Bulk vertices of a patch boundary may have lower degree, but never
      // more than trivalent.
      if (deg > 3) throw InvariantViolation("lattice: vertex degree exceeds three");
    }
  }
  // Plaquettes: boundary cycles alternate the two non-plaquette colors.
  std::map<std::pair<int, int>, Color> edge_color;
  for (const auto& e : edges) {
    edge_color[{std::min(e.v, e.w), std::max(e.v, e.w)}] = e.color;
  }
  for (const auto& p : plaquettes) {
    size_t k = p.vertices.size();
    if (k < 4 || k % 2 != 0)
      throw InvariantViolation("lattice: plaquette cycles must have even length >= 4");
    for (size_t i = 0; i < k; ++i) {
      int v = p.vertices[i], w = p.vertices[(i + 1) % k];
      auto it = edge_color.find({std::min(v, w), std::max(v, w)});
      if (it == edge_color.end()) throw InvariantViolation("lattice: plaquette edge missing");
      if (it->second == p.color)
        throw InvariantViolation("lattice: plaquette bounded by an edge of its own color");
      // Alternation: consecutive boundary edges carry the two other colors.
      int vn = p.vertices[(i + 2) % k];
      auto it2 = edge_color.find({std::min(w, vn), std::max(w, vn)});
      if (it2 == edge_color.end()) throw InvariantViolation("lattice: plaquette edge missing");
      if (it2->second == it->second)
        throw InvariantViolation("lattice: plaquette boundary colors do not alternate");
    }
  }
  for (const auto& r : boundaries)
    for (int v : r.vertices)
      if (v < 0 || size_t(v) >= nv) throw InvariantViolation("lattice: region vertex out of range");
}

LatticeSpec gen_torus_honeycomb(int a, int b, int layers) {
  if (a <= 0 || b <= 0 || a % 3 != 0 || b % 3 != 0)
    throw IncompatibleDimensions("gen_torus_honeycomb: sides must be positive multiples of 3");
  LatticeSpec spec;
  spec.layers = layers;

  auto mod = [](int x, int m) { return ((x % m) + m) % m; };
  // Vertices are the up/down triangles of the triangular face lattice;
  // faces (i,j) carry color (i - j) mod 3.
  auto vid = [&](int i, int j, int up) { return (mod(i, a) * b + mod(j, b)) * 2 + up; };
  spec.vertices.assign(size_t(2 * a * b), {});

  auto face_color = [&](int i, int j) { return Color(mod(i - j, 3)); };
  // The up triangle u(i,j) = faces {(i,j), (i+1,j), (i,j+1)} neighbors the
  // down triangles d(i,j), d(i-1,j), d(i,j-1); the shared face pair fixes
  // the edge color.
  std::set<std::pair<int, int>> seen;
  auto add_edge = [&](int v, int w, Color c) {
    auto key = std::minmax(v, w);
    if (seen.insert(key).second) spec.edges.push_back({v, w, c});
  };
  auto third = [](Color c1, Color c2) { return Color(3 - int(c1) - int(c2)); };
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      int u = vid(i, j, 1);
      // d(i,j): shared {(i+1,j), (i,j+1)}
      add_edge(u, vid(i, j, 0), third(face_color(i + 1, j), face_color(i, j + 1)));
      // d(i-1,j): shared {(i,j), (i,j+1)}
      add_edge(u, vid(i - 1, j, 0), third(face_color(i, j), face_color(i, j + 1)));
      // d(i,j-1): shared {(i,j), (i+1,j)}
      add_edge(u, vid(i, j - 1, 0), third(face_color(i, j), face_color(i + 1, j)));
    }

  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      LatticeSpec::PlaquetteInfo p;
      p.color = face_color(i, j);
      p.vertices = {vid(i, j, 1),     vid(i - 1, j, 0),     vid(i - 1, j, 1),
                    vid(i - 1, j - 1, 0), vid(i, j - 1, 1), vid(i, j - 1, 0)};
      spec.plaquettes.push_back(std::move(p));
    }

  spec.validate();
  return spec;
}

LatticeSpec apply_identifications(const LatticeSpec& spec) {
  if (spec.identifications.empty()) return spec;
  size_t nv = spec.vertices.size();
  std::vector<int> target(nv);
  for (size_t v = 0; v < nv; ++v) target[v] = int(v);
  for (auto [keep, merge] : spec.identifications) {
    if (keep < 0 || merge < 0 || size_t(keep) >= nv || size_t(merge) >= nv)
      throw InvariantViolation("identify: vertex out of range");
    target[merge] = keep;
  }
  // Resolve chains, then compact ids.
  for (size_t v = 0; v < nv; ++v) {
    int t = target[v];
    while (target[t] != t) t = target[t];
    target[v] = t;
  }
  std::vector<int> newid(nv, -1);
  LatticeSpec out;
  out.layers = spec.layers;
  for (size_t v = 0; v < nv; ++v)
    if (target[v] == int(v)) {
      newid[v] = int(out.vertices.size());
      out.vertices.push_back(spec.vertices[v]);
    }
  auto map_v = [&](int v) { return newid[target[v]]; };

  std::set<std::pair<int, int>> eseen;
  for (const auto& e : spec.edges) {
    int v = map_v(e.v), w = map_v(e.w);
    if (v == w) throw InvariantViolation("identify: edge collapses to a loop");
    auto key = std::minmax(v, w);
    if (eseen.insert(key).second) out.edges.push_back({v, w, e.color});
  }
  std::set<std::vector<int>> pseen;
  for (const auto& p : spec.plaquettes) {
    std::vector<int> cyc;
    for (int v : p.vertices) cyc.push_back(map_v(v));
    // canonical form up to rotation/reflection for deduplication
    std::vector<int> best = cyc;
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<int> c = cyc;
      if (dir) std::reverse(c.begin(), c.end());
      for (size_t r = 0; r < c.size(); ++r) {
        std::rotate(c.begin(), c.begin() + 1, c.end());
        if (c < best) best = c;
      }
    }
    if (pseen.insert(best).second) out.plaquettes.push_back({p.color, cyc});
  }
  for (const auto& r : spec.boundaries) {
    LatticeSpec::Region nr{r.name, r.tag, {}};
    std::set<int> verts;
    for (int v : r.vertices) verts.insert(map_v(v));
    nr.vertices.assign(verts.begin(), verts.end());
    out.boundaries.push_back(std::move(nr));
  }
  out.validate();
  return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

LatticeSpec load_lattice(const std::string& text) {
  LatticeSpec spec;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("lattice line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto toks = tokenize(line);
    if (toks[0] == "layers") {
      if (toks.size() != 2) fail("layers wants one value");
      spec.layers = std::stoi(toks[1]);
      continue;
    }
    if (toks[0] == "vertices" || toks[0] == "edges" || toks[0] == "plaquettes") {
      section = toks[0];
      continue;
    }
    if (toks[0] == "boundary") {
      // boundary <name> <tag>: v v v
      if (toks.size() < 3) fail("boundary wants a name and tag");
      LatticeSpec::Region r;
      r.name = toks[1];
      std::string tag = toks[2];
      if (!tag.empty() && tag.back() == ':') tag.pop_back();
      if (tag.size() != 1) fail("boundary tag must be X, Y or Z");
      auto f = parse_flavor(char(std::tolower(tag[0])));
      if (!f) fail("boundary tag must be X, Y or Z");
      r.tag = *f;
      for (size_t i = 3; i < toks.size(); ++i) r.vertices.push_back(std::stoi(toks[i]));
      spec.boundaries.push_back(std::move(r));
      continue;
    }
    if (toks[0] == "identify") {
      for (size_t i = 1; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos) fail("identify wants v=w pairs");
        spec.identifications.push_back(
            {std::stoi(toks[i].substr(0, eq)), std::stoi(toks[i].substr(eq + 1))});
      }
      continue;
    }
    if (section == "vertices") {
      // <id> [dock <color> | dead]
      int id = std::stoi(toks[0]);
      if (id != int(spec.vertices.size())) fail("vertex ids must be dense and ordered");
      LatticeSpec::VertexInfo info;
      if (toks.size() >= 2) {
        if (toks[1] == "dead") {
          info.role = VertexRole::Dead;
        } else if (toks[1] == "dock" && toks.size() >= 3) {
          info.role = VertexRole::Dock;
          auto c = parse_color(toks[2][0]);
          if (!c) fail("bad dock color");
          info.dock_color = *c;
        } else {
          fail("bad vertex role");
        }
      }
      spec.vertices.push_back(info);
      continue;
    }
    if (section == "edges") {
      if (toks.size() != 3) fail("edge wants: v w color");
      auto c = parse_color(toks[2][0]);
      if (!c) fail("bad edge color");
      spec.edges.push_back({std::stoi(toks[0]), std::stoi(toks[1]), *c});
      continue;
    }
    if (section == "plaquettes") {
      // <color>: v v v ...
      std::string ctok = toks[0];
      if (!ctok.empty() && ctok.back() == ':') ctok.pop_back();
      auto c = ctok.size() == 1 ? parse_color(ctok[0]) : std::nullopt;
      if (!c) fail("bad plaquette color");
      LatticeSpec::PlaquetteInfo p;
      p.color = *c;
      for (size_t i = 1; i < toks.size(); ++i) p.vertices.push_back(std::stoi(toks[i]));
      spec.plaquettes.push_back(std::move(p));
      continue;
    }
    fail("unrecognized line");
  }
  // Returned as written; callers resolve vertex gluings explicitly with
  // apply_identifications. Both forms must validate.
  spec.validate();
  if (!spec.identifications.empty()) apply_identifications(spec).validate();
  return spec;
}

std::string save_lattice(const LatticeSpec& spec) {
  std::ostringstream os;
  os << "layers " << spec.layers << "\n";
  os << "vertices\n";
  for (size_t v = 0; v < spec.vertices.size(); ++v) {
    os << v;
    if (spec.vertices[v].role == VertexRole::Dead)
      os << " dead";
    else if (spec.vertices[v].role == VertexRole::Dock)
      os << " dock " << color_char(spec.vertices[v].dock_color);
    os << "\n";
  }
  os << "edges\n";
  for (const auto& e : spec.edges)
    os << e.v << " " << e.w << " " << color_char(e.color) << "\n";
  os << "plaquettes\n";
  for (const auto& p : spec.plaquettes) {
    os << color_char(p.color) << ":";
    for (int v : p.vertices) os << " " << v;
    os << "\n";
  }
  for (const auto& r : spec.boundaries) {
    os << "boundary " << r.name << " " << char(std::toupper(flavor_char(r.tag))) << ":";
    for (int v : r.vertices) os << " " << v;
    os << "\n";
  }
  if (!spec.identifications.empty()) {
    os << "identify";
    for (auto [a, b] : spec.identifications) os << " " << a << "=" << b;
    os << "\n";
  }
  return os.str();
}

ScheduleSpec ScheduleSpec::concatenate(const std::vector<ScheduleSpec>& blocks) {
  ScheduleSpec out;
  auto same_round = [](const Round& a, const Round& b) {
    if (a.specs.size() != b.specs.size()) return false;
    for (size_t i = 0; i < a.specs.size(); ++i) {
      const auto& x = a.specs[i];
      const auto& y = b.specs[i];
      if (x.kind != y.kind || x.color != y.color || x.flavor != y.flavor || x.layer != y.layer ||
          x.vertex_flavors != y.vertex_flavors || x.explicit_pauli != y.explicit_pauli ||
          x.region != y.region)
        return false;
    }
    return true;
  };
  for (const auto& b : blocks) {
    for (size_t i = 0; i < b.rounds.size(); ++i) {
      if (i == 0 && !out.rounds.empty() && same_round(out.rounds.back(), b.rounds[i])) continue;
      out.rounds.push_back(b.rounds[i]);
    }
  }
  return out;
}

ScheduleSpec load_schedule(const std::string& text) {
  ScheduleSpec spec;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("schedule line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto toks = tokenize(line);
    if (toks[0] == "round") {
      std::string label = toks.size() > 1 ? toks[1] : "";
      if (!label.empty() && label.back() == ':') label.pop_back();
      spec.rounds.push_back({label, {}});
      continue;
    }
    if (toks[0] == "reference") {
      if (toks.size() != 2) fail("reference wants a round index");
      spec.reference_round = std::stoul(toks[1]);
      continue;
    }
    if (spec.rounds.empty()) fail("measurement before any round");
    MeasurementSpec m;
    size_t next = 0;
    if (toks[0] == "E") {
      if (toks.size() < 3) fail("E wants: color flavor L<layer> | color <flavor-per-layer>");
      m.kind = MeasurementSpec::Kind::Edge;
      auto c = parse_color(char(std::tolower(toks[1][0])));
      if (!c) fail("bad edge color");
      m.color = *c;
      if (toks[2].size() > 1) {
        for (char ch : toks[2]) {
          char lo = char(std::tolower(ch));
          if (lo != 'i' && lo != '-' && !parse_flavor(lo)) fail("bad edge flavor string");
          m.vertex_flavors += (lo == '-') ? 'i' : lo;
        }
        next = 3;
      } else {
        auto f = parse_flavor(char(std::tolower(toks[2][0])));
        if (!f) fail("bad edge flavor");
        m.flavor = *f;
        if (toks.size() < 4 || toks[3][0] != 'L') fail("edge layer must look like L1");
        m.layer = std::stoi(toks[3].substr(1));
        next = 4;
      }
    } else if (toks[0] == "V") {
      if (toks.size() < 2) fail("V wants a flavor string");
      m.kind = MeasurementSpec::Kind::Vertex;
      for (char ch : toks[1]) {
        char lo = char(std::tolower(ch));
        if (lo != 'i' && lo != '-' && !parse_flavor(lo)) fail("bad vertex flavor string");
        m.vertex_flavors += (lo == '-') ? 'i' : lo;
      }
      next = 2;
    } else if (toks[0] == "P") {
      m.kind = MeasurementSpec::Kind::Explicit;
      for (size_t i = 1; i < toks.size(); ++i) {
        if (toks[i][0] == '@') {
          next = i;
          break;
        }
        // v.l:F
        auto dot = toks[i].find('.');
        auto colon = toks[i].find(':');
        if (dot == std::string::npos || colon == std::string::npos) fail("P wants v.l:F tokens");
        int v = std::stoi(toks[i].substr(0, dot));
        int l = std::stoi(toks[i].substr(dot + 1, colon - dot - 1));
        auto f = parse_flavor(char(std::tolower(toks[i][colon + 1])));
        if (!f) fail("bad explicit flavor");
        m.explicit_pauli.push_back({size_t(v) * 1000000 + size_t(l), int(*f) + 1});
        next = i + 1;
      }
      if (next == 0) next = toks.size();
    } else {
      fail("unrecognized measurement kind");
    }
    if (next < toks.size()) {
      if (toks[next][0] != '@') fail("expected @region");
      m.region = toks[next].substr(1);
    }
    spec.rounds.back().specs.push_back(std::move(m));
  }
  return spec;
}

std::string save_schedule(const ScheduleSpec& spec) {
  std::ostringstream os;
  for (const auto& r : spec.rounds) {
    os << "round " << r.label << ":\n";
    for (const auto& m : r.specs) {
      switch (m.kind) {
        case MeasurementSpec::Kind::Edge:
          os << "E " << color_char(m.color) << " ";
          if (!m.vertex_flavors.empty()) {
            for (char ch : m.vertex_flavors) os << (ch == 'i' ? 'I' : char(std::toupper(ch)));
          } else {
            os << char(std::toupper(flavor_char(m.flavor))) << " L" << m.layer;
          }
          break;
        case MeasurementSpec::Kind::Vertex: {
          os << "V ";
          for (char ch : m.vertex_flavors) os << (ch == 'i' ? 'I' : char(std::toupper(ch)));
          break;
        }
        case MeasurementSpec::Kind::Explicit: {
          os << "P";
          for (auto [code, p] : m.explicit_pauli)
            os << " " << code / 1000000 << "." << code % 1000000 << ":" << "IXYZ"[p];
          break;
        }
      }
      if (!m.region.empty()) os << " @" << m.region;
      os << "\n";
    }
  }
  if (spec.reference_round) os << "reference " << *spec.reference_round << "\n";
  return os.str();
}

std::vector<std::vector<PauliOperator>> compile_schedule(const ScheduleSpec& schedule,
                                                         const LatticeSpec& lattice) {
  std::vector<std::vector<PauliOperator>> out;
  size_t n = lattice.num_qubits();

  auto region_vertices = [&](const std::string& name) {
    std::vector<bool> in(lattice.num_vertices(), false);
    if (name.empty()) {
      for (int v : lattice.live_vertices()) in[v] = true;
    } else {
      const auto* r = lattice.find_region(name);
      if (!r) throw UnknownRegion("compile: unknown region '" + name + "'");
      for (int v : r->vertices) in[v] = true;
    }
    return in;
  };

  for (const auto& round : schedule.rounds) {
    std::vector<PauliOperator> ops;
    for (const auto& m : round.specs) {
      switch (m.kind) {
        case MeasurementSpec::Kind::Edge: {
          auto in = region_vertices(m.region);
          bool multi = !m.vertex_flavors.empty();
          if (multi && int(m.vertex_flavors.size()) != lattice.layers)
            throw InvariantViolation("compile: edge flavor string length != layers");
          if (!multi && (m.layer < 1 || m.layer > lattice.layers))
            throw InvariantViolation("compile: edge layer out of range");
          for (const auto& e : lattice.edges) {
            if (e.color != m.color || !in[e.v] || !in[e.w]) continue;
            PauliOperator p(n);
            if (multi) {
              for (int l = 0; l < lattice.layers; ++l) {
                char ch = m.vertex_flavors[l];
                if (ch == 'i') continue;
                int f = int(*parse_flavor(ch)) + 1;
                p.set_pauli(lattice.qubit(e.v, l), f);
                p.set_pauli(lattice.qubit(e.w, l), f);
              }
            } else {
              p.set_pauli(lattice.qubit(e.v, m.layer - 1), int(m.flavor) + 1);
              p.set_pauli(lattice.qubit(e.w, m.layer - 1), int(m.flavor) + 1);
            }
            if (!p.is_identity()) ops.push_back(std::move(p));
          }
          break;
        }
        case MeasurementSpec::Kind::Vertex: {
          auto in = region_vertices(m.region);
          if (int(m.vertex_flavors.size()) != lattice.layers)
            throw InvariantViolation("compile: vertex flavor string length != layers");
          for (size_t v = 0; v < lattice.num_vertices(); ++v) {
            if (!in[v]) continue;
            PauliOperator p(n);
            for (int l = 0; l < lattice.layers; ++l) {
              char ch = m.vertex_flavors[l];
              if (ch == 'i') continue;
              p.set_pauli(lattice.qubit(int(v), l), int(*parse_flavor(ch)) + 1);
            }
            if (!p.is_identity()) ops.push_back(std::move(p));
          }
          break;
        }
        case MeasurementSpec::Kind::Explicit: {
          PauliOperator p(n);
          for (auto [code, pl] : m.explicit_pauli) {
            int v = int(code / 1000000), l = int(code % 1000000);
            if (v < 0 || size_t(v) >= lattice.num_vertices() || l < 1 || l > lattice.layers)
              throw InvariantViolation("compile: explicit qubit out of range");
            p.set_pauli(lattice.qubit(v, l - 1), pl);
          }
          ops.push_back(std::move(p));
          break;
        }
      }
    }
    for (size_t i = 0; i < ops.size(); ++i)
      for (size_t j = i + 1; j < ops.size(); ++j)
        if (!ops[i].commutes(ops[j]))
          throw NonCommutingRound("compile: round '" + round.label + "' operators " +
                                  std::to_string(i) + " and " + std::to_string(j) +
                                  " anticommute");
    out.push_back(std::move(ops));
  }
  return out;
}

}  // namespace dacodes

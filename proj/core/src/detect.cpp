#include "dacodes/detect.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dacodes/parallel.hpp"

namespace dacodes {

namespace {

bool is_interlayer_zz_round(const std::vector<PauliOperator>& ops, const LatticeSpec& lat) {
  if (ops.empty() || lat.layers < 2) return false;
  for (const auto& p : ops) {
    if (p.weight() != size_t(lat.layers)) return false;
    // All factors must be Z's on one vertex across layers.
    int vertex = -1;
    for (size_t q = 0; q < p.num_qubits(); ++q) {
      int pa = p.pauli_at(q);
      if (pa == 0) continue;
      if (pa != 3) return false;
      int v = int(q) / lat.layers;
      if (vertex == -1) vertex = v;
      if (v != vertex) return false;
    }
  }
  return true;
}

bool same_round_ops(const std::vector<PauliOperator>& a, const std::vector<PauliOperator>& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::string> sa, sb;
  for (const auto& p : a) sa.push_back(p.to_string());
  for (const auto& p : b) sb.push_back(p.to_string());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

struct RawDetector {
  BitVec outcomes;
  bool value = false;

  void operator^=(const RawDetector& o) {
    outcomes ^= o.outcomes;
    value = value != o.value;
  }
};

// Reduced echelon form with pivots on the *last* outcome index, detectors
// ordered by pivot; excluded columns eliminated first and their pivot rows
// dropped. The fixed parity value is carried along every combination.
std::vector<RawDetector> canonical_basis(std::vector<RawDetector> rows,
                                         const std::vector<bool>& excluded, size_t width) {
  for (auto& r : rows) r.outcomes.resize(width);
  // Eliminate excluded columns.
  for (size_t col = 0; col < width; ++col) {
    if (!excluded[col]) continue;
    size_t pivot = SIZE_MAX;
    for (size_t i = 0; i < rows.size(); ++i)
      if (rows[i].outcomes.get(col)) {
        pivot = i;
        break;
      }
    if (pivot == SIZE_MAX) continue;
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != pivot && rows[i].outcomes.get(col)) rows[i] ^= rows[pivot];
    rows.erase(rows.begin() + pivot);
  }
  // Echelon over descending outcome index.
  std::vector<RawDetector> basis;
  std::vector<size_t> pivots;
  for (auto& r : rows) {
    RawDetector v = std::move(r);
    for (size_t i = 0; i < basis.size(); ++i)
      if (v.outcomes.get(pivots[i])) v ^= basis[i];
    if (!v.outcomes.any()) continue;
    size_t piv = v.outcomes.highest_bit();
    for (size_t i = 0; i < basis.size(); ++i)
      if (basis[i].outcomes.get(piv)) basis[i] ^= v;
    basis.push_back(std::move(v));
    pivots.push_back(piv);
  }
  // Locality sweep: replace a row when the combination strictly shrinks its
  // temporal footprint, then its support.
  auto span_of = [](const BitVec& v) {
    auto ones = v.ones();
    return ones.empty() ? size_t(0) : ones.back() - ones.front();
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        RawDetector cand = basis[i];
        cand ^= basis[j];
        if (!cand.outcomes.any()) continue;
        auto key = std::make_pair(span_of(cand.outcomes), cand.outcomes.popcount());
        auto cur = std::make_pair(span_of(basis[i].outcomes), basis[i].outcomes.popcount());
        if (key < cur) {
          basis[i] = std::move(cand);
          changed = true;
        }
      }
  }
  std::sort(basis.begin(), basis.end(), [](const RawDetector& a, const RawDetector& b) {
    size_t ha = a.outcomes.highest_bit(), hb = b.outcomes.highest_bit();
    if (ha != hb) return ha < hb;
    return a.outcomes.to_string() < b.outcomes.to_string();
  });
  return basis;
}

void annotate(Detector& det, const RunResult& run, const LatticeSpec& lat) {
  auto ones = det.outcomes.ones();
  if (ones.empty()) return;
  det.first_round = run.outcomes[ones.front()].round;
  det.last_round = run.outcomes[ones.front()].round;
  std::set<int> support_vertices;
  for (size_t k : ones) {
    det.first_round = std::min(det.first_round, run.outcomes[k].round);
    det.last_round = std::max(det.last_round, run.outcomes[k].round);
    const PauliOperator& op = run.outcome_op(k);
    for (size_t q = 0; q < op.num_qubits(); ++q)
      if (op.pauli_at(q) != 0) support_vertices.insert(int(q) / lat.layers);
  }
  // Color: the unique plaquette whose vertex set matches the support.
  std::optional<size_t> match;
  for (size_t pi = 0; pi < lat.plaquettes.size(); ++pi) {
    std::set<int> pv(lat.plaquettes[pi].vertices.begin(), lat.plaquettes[pi].vertices.end());
    if (pv == support_vertices) {
      if (match) {
        match.reset();
        break;
      }
      match = pi;
    }
  }
  det.layer_flavors.assign(lat.layers, '-');
  if (!match) return;
  det.color = lat.plaquettes[*match].color;
  const auto& pverts = lat.plaquettes[*match].vertices;

  // Inference events: per layer, maximal runs of consecutive constituent
  // rounds form one inference; the run's product must cover the plaquette
  // with one flavor.
  std::map<size_t, std::vector<size_t>> by_round;
  for (size_t k : ones) by_round[run.outcomes[k].round].push_back(k);
  for (int l = 0; l < lat.layers; ++l) {
    std::vector<size_t> rounds;
    for (auto& [round, ks] : by_round)
      for (size_t k : ks) {
        const PauliOperator& op = run.outcome_op(k);
        bool touches = false;
        for (size_t q = l; q < op.num_qubits(); q += lat.layers)
          if (op.pauli_at(q) != 0) touches = true;
        if (touches) {
          if (rounds.empty() || rounds.back() != round) rounds.push_back(round);
          break;
        }
      }
    size_t i = 0;
    while (i < rounds.size()) {
      size_t j = i;
      while (j + 1 < rounds.size() && rounds[j + 1] == rounds[j] + 1) ++j;
      PauliOperator acc(run.state.num_qubits());
      for (size_t r = i; r <= j; ++r)
        for (size_t k : by_round[rounds[r]]) {
          const PauliOperator& op = run.outcome_op(k);
          PauliOperator part(op.num_qubits());
          for (size_t q = l; q < op.num_qubits(); q += lat.layers)
            if (op.pauli_at(q) != 0) part.set_pauli(q, op.pauli_at(q));
          acc *= part;
        }
      int flavor = 0;
      bool uniform = true;
      size_t covered = 0;
      for (size_t q = l; q < acc.num_qubits(); q += lat.layers) {
        int pa = acc.pauli_at(q);
        if (pa == 0) continue;
        if (flavor == 0) flavor = pa;
        if (pa != flavor) uniform = false;
        ++covered;
      }
      if (uniform && flavor != 0 && covered == pverts.size())
        det.events.push_back({rounds[j], l + 1, Flavor(flavor - 1)});
      i = j + 1;
    }
  }
  for (int l = 0; l < lat.layers; ++l) {
    char f = '-';
    for (const auto& e : det.events) {
      if (e.layer != l + 1) continue;
      char ch = flavor_char(e.flavor);
      if (f == '-')
        f = ch;
      else if (f != ch)
        f = '?';
    }
    det.layer_flavors[l] = f;
  }
}

}  // namespace

namespace {

// Rows of the space supported entirely on `allowed` outcomes: eliminate the
// complement columns and keep the rows that end up clean.
std::vector<RawDetector> restrict_to(std::vector<RawDetector> rows,
                                     const std::vector<bool>& allowed, size_t width) {
  for (size_t col = 0; col < width; ++col) {
    if (allowed[col]) continue;
    size_t pivot = SIZE_MAX;
    for (size_t i = 0; i < rows.size(); ++i)
      if (rows[i].outcomes.get(col)) {
        pivot = i;
        break;
      }
    if (pivot == SIZE_MAX) continue;
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != pivot && rows[i].outcomes.get(col)) rows[i] ^= rows[pivot];
    rows.erase(rows.begin() + pivot);
  }
  return rows;
}

}  // namespace

DetectorSet extract_detectors(const RunResult& run, const LatticeSpec& lattice) {
  DetectorSet out;
  out.n_outcomes = run.state.num_outcomes();
  out.outcome_excluded.assign(out.n_outcomes, false);

  // Discard interlayer-round outcomes whose flanking rounds are identical.
  for (size_t t = 0; t < run.compiled.size(); ++t) {
    if (!is_interlayer_zz_round(run.compiled[t], lattice)) continue;
    if (t == 0 || t + 1 == run.compiled.size()) continue;
    if (!same_round_ops(run.compiled[t - 1], run.compiled[t + 1])) continue;
    size_t begin = run.round_first_outcome[t];
    size_t end = t + 1 < run.round_first_outcome.size() ? run.round_first_outcome[t + 1]
                                                        : out.n_outcomes;
    for (size_t k = begin; k < end; ++k) out.outcome_excluded[k] = true;
  }

  // Rows live on [outcomes | seed marks]; seed columns are always
  // eliminated so detectors never depend on initial-state signs.
  size_t n_seeds = run.state.num_seeds();
  size_t width = out.n_outcomes + n_seeds;
  std::vector<RawDetector> raw;
  for (const auto& round : run.events)
    for (const auto& ev : round)
      if (ev.deterministic) {
        RawDetector r{*ev.detector_combo, ev.detector_value};
        r.outcomes.resize(width);
        for (size_t sbit : ev.detector_seed_combo.ones())
          r.outcomes.set(out.n_outcomes + sbit, true);
        raw.push_back(std::move(r));
      }

  // The kept part of the space.
  std::vector<bool> kept(width, false);
  for (size_t k = 0; k < out.n_outcomes; ++k) kept[k] = !out.outcome_excluded[k];
  std::vector<RawDetector> space = restrict_to(raw, kept, width);
  for (auto& r : space) {
    for (size_t sbit = 0; sbit < n_seeds; ++sbit)
      if (r.outcomes.get(out.n_outcomes + sbit))
        throw InternalError("extract_detectors: seed dependence survived elimination");
  }

  // Plaquette-local detectors first: rows whose constituent measurements
  // act within a single plaquette's vertex set.
  std::vector<RawDetector> chosen;
  std::vector<BitVec> echelon;
  std::vector<size_t> pivots;
  auto try_add = [&](RawDetector row) {
    BitVec v = row.outcomes;
    for (size_t i = 0; i < echelon.size(); ++i)
      if (v.get(pivots[i])) v ^= echelon[i];
    if (!v.any()) return;
    pivots.push_back(v.highest_bit());
    echelon.push_back(std::move(v));
    chosen.push_back(std::move(row));
  };

  // Per-layer flavor pattern of a row's inference blocks: '-' untouched,
  // x/y/z a pure flavor, '?' mixed (either within a block product or
  // across blocks).
  auto flavor_pattern = [&](const BitVec& outcomes) {
    std::string pattern(lattice.layers, '-');
    std::map<size_t, std::vector<size_t>> by_round;
    for (size_t k : outcomes.ones())
      if (k < out.n_outcomes) by_round[run.outcomes[k].round].push_back(k);
    for (int l = 0; l < lattice.layers; ++l) {
      std::vector<size_t> rounds;
      for (auto& [round, ks] : by_round)
        for (size_t k : ks) {
          const PauliOperator& op = run.outcome_op(k);
          for (size_t q = l; q < op.num_qubits(); q += size_t(lattice.layers))
            if (op.pauli_at(q) != 0) {
              if (rounds.empty() || rounds.back() != round) rounds.push_back(round);
              goto next_round;
            }
        next_round:;
        }
      size_t i = 0;
      while (i < rounds.size()) {
        size_t j = i;
        while (j + 1 < rounds.size() && rounds[j + 1] == rounds[j] + 1) ++j;
        PauliOperator acc(run.state.num_qubits());
        for (size_t r = i; r <= j; ++r)
          for (size_t k : by_round[rounds[r]]) {
            const PauliOperator& op = run.outcome_op(k);
            PauliOperator part(op.num_qubits());
            for (size_t q = l; q < op.num_qubits(); q += size_t(lattice.layers))
              if (op.pauli_at(q) != 0) part.set_pauli(q, op.pauli_at(q));
            acc *= part;
          }
        int flavor = 0;
        for (size_t q = l; q < acc.num_qubits(); q += size_t(lattice.layers)) {
          int pa = acc.pauli_at(q);
          if (pa == 0) continue;
          if (flavor == 0) flavor = pa;
          if (pa != flavor) flavor = -1;
        }
        char ch = flavor <= 0 ? '?' : flavor_char(Flavor(flavor - 1));
        if (pattern[l] == '-')
          pattern[l] = ch;
        else if (pattern[l] != ch)
          pattern[l] = '?';
        i = j + 1;
      }
    }
    return pattern;
  };

  for (const auto& pl : lattice.plaquettes) {
    std::set<int> pv(pl.vertices.begin(), pl.vertices.end());
    std::vector<bool> allowed(width, false);
    for (size_t k = 0; k < out.n_outcomes; ++k) {
      if (out.outcome_excluded[k]) continue;
      const PauliOperator& op = run.outcome_op(k);
      bool inside = true;
      for (size_t q = 0; q < op.num_qubits() && inside; ++q)
        if (op.pauli_at(q) != 0 && !pv.count(int(q) / lattice.layers)) inside = false;
      allowed[k] = inside;
    }
    auto local = canonical_basis(restrict_to(space, allowed, width), out.outcome_excluded,
                                 out.n_outcomes);
    // Prefer rows whose per-layer flavor is pure, then temporally tight.
    auto span_of = [](const BitVec& v) {
      auto o = v.ones();
      return o.empty() ? size_t(0) : o.back() - o.front();
    };
    auto key_of = [&](const RawDetector& r) {
      std::string pat = flavor_pattern(r.outcomes);
      int mixed = int(std::count(pat.begin(), pat.end(), '?'));
      return std::make_tuple(mixed, span_of(r.outcomes), r.outcomes.popcount());
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < local.size(); ++i)
        for (size_t j = 0; j < local.size(); ++j) {
          if (i == j) continue;
          RawDetector cand = local[i];
          cand ^= local[j];
          if (!cand.outcomes.any()) continue;
          if (key_of(cand) < key_of(local[i])) {
            local[i] = std::move(cand);
            changed = true;
          }
        }
    }
    for (auto& row : local) try_add(std::move(row));
  }
  // Complete with the nonlocal residue.
  auto rest = canonical_basis(space, out.outcome_excluded, out.n_outcomes);
  for (auto& row : rest) try_add(std::move(row));

  std::sort(chosen.begin(), chosen.end(), [](const RawDetector& a, const RawDetector& b) {
    size_t ha = a.outcomes.highest_bit(), hb = b.outcomes.highest_bit();
    if (ha != hb) return ha < hb;
    return a.outcomes.to_string() < b.outcomes.to_string();
  });
  for (auto& row : chosen) {
    Detector d;
    d.outcomes = std::move(row.outcomes);
    d.value = row.value;
    annotate(d, run, lattice);
    out.detectors.push_back(std::move(d));
  }
  return out;
}

std::vector<ErrorLocation> enumerate_error_locations(const RunResult& run,
                                                     const LatticeSpec& lattice) {
  std::vector<ErrorLocation> out;
  size_t n = run.state.num_qubits();
  size_t rounds = run.compiled.size();
  for (size_t q = 0; q < n; ++q) {
    if (lattice.vertices[q / lattice.layers].role == VertexRole::Dead) continue;
    for (size_t t = 0; t + 1 < rounds; ++t) {
      int flavor = 0;
      for (const auto& op : run.compiled[t]) {
        if (op.pauli_at(q) != 0) {
          flavor = op.pauli_at(q);
          break;
        }
      }
      if (flavor != 0) out.push_back({q, t, Flavor(flavor - 1)});
    }
  }
  return out;
}

std::vector<ErrorLocation> error_basis_decompose(const RunResult& run,
                                                 const LatticeSpec& lattice, size_t qubit,
                                                 size_t after_round, Flavor flavor) {
  (void)lattice;
  auto flavor_at = [&](size_t t) -> int {
    for (const auto& op : run.compiled[t])
      if (op.pauli_at(qubit) != 0) return op.pauli_at(qubit) - 1;
    return -1;
  };
  // Previous touching round at or before the gap, next strictly after.
  std::optional<size_t> prev, next;
  for (size_t t = 0; t <= after_round && t < run.compiled.size(); ++t)
    if (flavor_at(t) >= 0) prev = t;
  for (size_t t = after_round + 1; t < run.compiled.size(); ++t)
    if (flavor_at(t) >= 0) {
      next = t;
      break;
    }
  if (!prev && !next)
    throw FlavorUndefined("error_basis_decompose: no adjacent round touches the qubit");
  if (prev && flavor_at(*prev) == int(flavor)) return {{qubit, *prev, flavor}};
  if (next && flavor_at(*next) == int(flavor)) return {{qubit, *next, flavor}};
  if (!prev || !next)
    throw FlavorUndefined("error_basis_decompose: flavor matches neither adjacent round");
  return {{qubit, *prev, Flavor(flavor_at(*prev))}, {qubit, *next, Flavor(flavor_at(*next))}};
}

BitVec flipped_outcomes(const RunResult& run, const ErrorLocation& loc) {
  BitVec out(run.state.num_outcomes());
  PauliOperator err(run.state.num_qubits());
  err.set_pauli(loc.qubit, int(loc.flavor) + 1);
  size_t start = loc.round + 1 < run.round_first_outcome.size()
                     ? run.round_first_outcome[loc.round + 1]
                     : run.state.num_outcomes();
  for (size_t k = start; k < run.state.num_outcomes(); ++k)
    if (!run.outcome_op(k).commutes(err)) out.set(k, true);
  return out;
}

BitVec syndrome(const DetectorSet& dets, const RunResult& run,
                const std::vector<ErrorLocation>& chain) {
  BitVec flips(run.state.num_outcomes());
  for (const auto& loc : chain) flips ^= flipped_outcomes(run, loc);
  BitVec out(dets.detectors.size());
  for (size_t i = 0; i < dets.detectors.size(); ++i)
    if (dets.detectors[i].outcomes.and_parity(flips)) out.set(i, true);
  return out;
}

SensitivityMatrix sensitivity_matrix(const DetectorSet& dets, const RunResult& run,
                                     const std::vector<ErrorLocation>& columns, int n_threads) {
  SensitivityMatrix h;
  h.columns = columns;
  h.column_syndromes.assign(columns.size(), BitVec(dets.detectors.size()));
  parallel_for(columns.size(), n_threads,
               [&](size_t i) { h.column_syndromes[i] = syndrome(dets, run, {columns[i]}); });
  return h;
}

std::vector<LogicalMembrane> membranes(const RunResult& run) {
  std::vector<LogicalMembrane> out;
  if (run.frame_after.empty()) return out;
  size_t k = run.frame_after[0].pairs.size();
  for (size_t i = 0; i < k; ++i) {
    LogicalMembrane mx, mz;
    mx.label = run.frame_after[0].pairs[i].label + ".x";
    mz.label = run.frame_after[0].pairs[i].label + ".z";
    for (const auto& frame : run.frame_after) {
      mx.slices.push_back(frame.pairs[i].x);
      mz.slices.push_back(frame.pairs[i].z);
    }
    out.push_back(std::move(mx));
    out.push_back(std::move(mz));
  }
  return out;
}

bool is_consequential(const std::vector<LogicalMembrane>& mem,
                      const std::vector<ErrorLocation>& chain) {
  for (const auto& m : mem) {
    bool parity = false;
    for (const auto& loc : chain) {
      PauliOperator err(m.slices[loc.round].num_qubits());
      err.set_pauli(loc.qubit, int(loc.flavor) + 1);
      if (!m.slices[loc.round].commutes(err)) parity = !parity;
    }
    if (parity) return true;
  }
  return false;
}

CorrectabilityReport verify_correctability(const DetectorSet& dets, const RunResult& run,
                                           const LatticeSpec& lattice,
                                           const std::vector<LogicalMembrane>& mem,
                                           size_t window_begin, size_t window_end) {
  CorrectabilityReport rep;
  auto all = enumerate_error_locations(run, lattice);
  std::vector<std::vector<ErrorLocation>> chains;
  for (const auto& loc : all)
    if (loc.round >= window_begin && loc.round < window_end) chains.push_back({loc});
  // Adjacent same-qubit pairs (consecutive touched rounds).
  std::map<size_t, std::vector<ErrorLocation>> per_qubit;
  for (const auto& c : chains) per_qubit[c[0].qubit].push_back(c[0]);
  for (auto& [q, locs] : per_qubit) {
    std::sort(locs.begin(), locs.end(),
              [](const ErrorLocation& a, const ErrorLocation& b) { return a.round < b.round; });
    for (size_t i = 0; i + 1 < locs.size(); ++i) {
      // consecutive touches of this qubit
      bool touched_between = false;
      for (size_t t = locs[i].round + 1; t < locs[i + 1].round; ++t)
        for (const auto& op : run.compiled[t])
          if (op.pauli_at(q) != 0) touched_between = true;
      if (!touched_between) chains.push_back({locs[i], locs[i + 1]});
    }
  }
  rep.n_columns = chains.size();

  std::map<std::string, std::vector<size_t>> classes;
  std::vector<BitVec> syndromes(chains.size());
  for (size_t i = 0; i < chains.size(); ++i) {
    syndromes[i] = syndrome(dets, run, chains[i]);
    classes[syndromes[i].to_string()].push_back(i);
  }
  rep.n_classes = classes.size();

  auto chain_xor = [](const std::vector<ErrorLocation>& a, const std::vector<ErrorLocation>& b) {
    std::map<ErrorLocation, int> count;
    for (const auto& l : a) count[l] ^= 1;
    for (const auto& l : b) count[l] ^= 1;
    std::vector<ErrorLocation> out;
    for (const auto& [l, c] : count)
      if (c) out.push_back(l);
    return out;
  };

  for (const auto& [key, members] : classes) {
    bool zero_syndrome = key.find('1') == std::string::npos;
    if (zero_syndrome) {
      for (size_t i : members)
        if (is_consequential(mem, chains[i]))
          rep.violations.push_back({chains[i], "syndrome-free chain acts on the logicals"});
    }
    for (size_t a = 0; a < members.size(); ++a)
      for (size_t b = a + 1; b < members.size(); ++b) {
        auto diff = chain_xor(chains[members[a]], chains[members[b]]);
        if (is_consequential(mem, diff))
          rep.violations.push_back(
              {diff, "equal-syndrome chains differ by a logical operator"});
      }
  }
  return rep;
}

}  // namespace dacodes

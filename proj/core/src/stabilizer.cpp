#include "dacodes/stabilizer.hpp"

namespace dacodes {

namespace {

// Sign-stripped symplectic row (x | z) of length 2n.
BitVec symplectic_row(const PauliOperator& p) {
  size_t n = p.num_qubits();
  BitVec row(2 * n);
  for (size_t q = 0; q < n; ++q) {
    if (p.x_bit(q)) row.set(q, true);
    if (p.z_bit(q)) row.set(n + q, true);
  }
  return row;
}

BitMatrix symplectic_rows(const std::vector<PauliOperator>& ops) {
  BitMatrix m;
  if (ops.empty()) return m;
  m = BitMatrix(0, 2 * ops[0].num_qubits());
  for (const auto& p : ops) m.add_row(symplectic_row(p));
  return m;
}

}  // namespace

void StabilizerState::seed_generator(const PauliOperator& g) {
  if (g.num_qubits() != n_) throw DimensionMismatch("seed_generator");
  if (!commutes_with_all(g)) throw Error("seed_generator: anticommutes with the group");
  if (in_group(g)) return;
  gens_.push_back(g);
  prov_.emplace_back();
  BitVec sp(n_seeds_ + 1);
  sp.set(n_seeds_++, true);
  seed_prov_.push_back(std::move(sp));
}

MeasureResult StabilizerState::measure(const PauliOperator& p) {
  if (p.num_qubits() != n_) throw DimensionMismatch("measure");
  MeasureResult res;
  res.outcome_index = n_outcomes_++;

  std::vector<size_t> anti;
  for (size_t i = 0; i < gens_.size(); ++i)
    if (!gens_[i].commutes(p)) anti.push_back(i);

  if (!anti.empty()) {
    // Lowest-index anticommuting generator is the pivot; the others are
    // repaired by multiplication, the pivot is replaced by P.
    size_t pivot = anti[0];
    for (size_t j = 1; j < anti.size(); ++j) {
      gens_[anti[j]] *= gens_[pivot];
      prov_[anti[j]] ^= prov_[pivot];
      seed_prov_[anti[j]] ^= seed_prov_[pivot];
    }
    gens_[pivot] = p;
    BitVec pr(res.outcome_index + 1);
    pr.set(res.outcome_index, true);
    prov_[pivot] = pr;
    seed_prov_[pivot] = BitVec();
    res.deterministic = false;
    return res;
  }

  if (auto combo = in_group(p)) {
    res.deterministic = true;
    BitVec det(res.outcome_index + 1);
    det.set(res.outcome_index, true);
    PauliOperator prod(n_);
    BitVec seeds;
    for (size_t i : combo->ones()) {
      det ^= prov_[i];
      seeds ^= seed_prov_[i];
      prod *= gens_[i];
    }
    res.detector_combo = det;
    res.detector_seed_combo = seeds;
    res.detector_value = prod.sign() != p.sign();
    return res;
  }

  // Independent, commuting: rank grows by one.
  gens_.push_back(p);
  BitVec pr(res.outcome_index + 1);
  pr.set(res.outcome_index, true);
  prov_.push_back(pr);
  seed_prov_.emplace_back();
  res.deterministic = false;
  return res;
}

std::optional<BitVec> StabilizerState::in_group(const PauliOperator& p) const {
  if (gens_.empty()) return p.is_identity() ? std::optional<BitVec>(BitVec(0)) : std::nullopt;
  BitMatrix m = symplectic_rows(gens_);
  BitVec combo;
  if (!m.solve(symplectic_row(p), &combo)) return std::nullopt;
  return combo;
}

bool StabilizerState::commutes_with_all(const PauliOperator& p) const {
  for (const auto& g : gens_)
    if (!g.commutes(p)) return false;
  return true;
}

bool StabilizerState::same_group(const std::vector<PauliOperator>& other) const {
  BitMatrix a = symplectic_rows(gens_);
  for (const auto& p : other) {
    if (p.num_qubits() != n_) throw DimensionMismatch("same_group");
    if (!a.solve(symplectic_row(p))) return false;
  }
  BitMatrix b = symplectic_rows(other);
  for (const auto& g : gens_)
    if (!b.solve(symplectic_row(g))) return false;
  return true;
}

void validate_frame(const StabilizerState& state, const LogicalFrame& frame) {
  for (size_t i = 0; i < frame.pairs.size(); ++i) {
    const auto& pi = frame.pairs[i];
    if (!state.commutes_with_all(pi.x) || !state.commutes_with_all(pi.z))
      throw FrameMismatch("frame rep anticommutes with a stabilizer");
    if (state.in_group(pi.x) || state.in_group(pi.z))
      throw FrameMismatch("frame rep is a stabilizer");
    for (size_t j = 0; j < frame.pairs.size(); ++j) {
      const auto& pj = frame.pairs[j];
      bool want_anti = i == j;
      if (pi.x.commutes(pj.z) == want_anti) throw FrameMismatch("frame pairing broken");
      if (i != j && (!pi.x.commutes(pj.x) || !pi.z.commutes(pj.z)))
        throw FrameMismatch("frame pairing broken");
    }
  }
}

LogicalFrame derive_frame(const StabilizerState& state) {
  size_t n = state.num_qubits();
  // Centralizer: kernel of the symplectic-product map against the group.
  BitMatrix gens = symplectic_rows(state.generators());
  // v commutes with g iff <g, Lambda v> = 0 where Lambda swaps halves; build
  // the product matrix row per generator and solve for the kernel basis by
  // brute RREF over candidate unit vectors.
  std::vector<BitVec> kernel;
  {
    // Gaussian elimination on the constraint system: unknown v in F_2^{2n},
    // constraints gens * Lambda * v = 0.
    std::vector<BitVec> constraints;
    for (size_t i = 0; i < gens.rows(); ++i) {
      BitVec row(2 * n);
      for (size_t q = 0; q < n; ++q) {
        if (gens.row(i).get(n + q)) row.set(q, true);  // z part hits x
        if (gens.row(i).get(q)) row.set(n + q, true);
      }
      constraints.push_back(std::move(row));
    }
    BitMatrix c;
    c = BitMatrix(0, 2 * n);
    for (auto& r : constraints) c.add_row(r);
    auto pivots = c.rref();
    std::vector<bool> is_pivot(2 * n, false);
    for (size_t p : pivots) is_pivot[p] = true;
    for (size_t col = 0; col < 2 * n; ++col) {
      if (is_pivot[col]) continue;
      BitVec v(2 * n);
      v.set(col, true);
      for (size_t r = 0; r < c.rows(); ++r)
        if (c.row(r).get(col)) v.set(pivots[r], true);
      kernel.push_back(std::move(v));
    }
  }
  // Reduce kernel modulo the group rows.
  BitMatrix group = gens;
  auto gpiv = group.rref();
  std::vector<BitVec> logicals;
  for (auto v : kernel) {
    for (size_t r = 0; r < group.rows(); ++r)
      if (v.get(gpiv[r])) v ^= group.row(r);
    // keep if independent of group and earlier logicals
    BitMatrix probe = group;
    for (const auto& l : logicals) probe.add_row(l);
    size_t base = probe.rank();
    probe.add_row(v);
    if (probe.rank() > base) logicals.push_back(v);
  }

  auto to_pauli = [&](const BitVec& v) {
    PauliOperator p(n);
    for (size_t q = 0; q < n; ++q) {
      int x = v.get(q), z = v.get(n + q);
      p.set_pauli(q, x && z ? 2 : (x ? 1 : (z ? 3 : 0)));
    }
    return p;
  };
  auto sympl = [&](const BitVec& a, const BitVec& b) {
    bool acc = false;
    for (size_t q = 0; q < n; ++q) {
      if (a.get(q) && b.get(n + q)) acc = !acc;
      if (a.get(n + q) && b.get(q)) acc = !acc;
    }
    return acc;
  };

  // Symplectic Gram-Schmidt pairing.
  LogicalFrame frame;
  std::vector<BitVec> pool = logicals;
  int qubit = 1;
  while (!pool.empty()) {
    BitVec a = pool.front();
    pool.erase(pool.begin());
    size_t partner = SIZE_MAX;
    for (size_t i = 0; i < pool.size(); ++i)
      if (sympl(a, pool[i])) {
        partner = i;
        break;
      }
    if (partner == SIZE_MAX)
      throw InternalError("derive_frame: unpaired logical direction");
    BitVec b = pool[partner];
    pool.erase(pool.begin() + partner);
    for (auto& v : pool) {
      if (sympl(v, b)) v ^= a;
      if (sympl(v, a)) v ^= b;
    }
    frame.pairs.push_back({to_pauli(a), to_pauli(b), "q" + std::to_string(qubit++)});
  }
  return frame;
}

LogicalFrame update_logicals(const StabilizerState& state, const LogicalFrame& frame,
                             const std::vector<PauliOperator>& next_round) {
  // Per-generator anticommutation pattern against the next round.
  const auto& gens = state.generators();
  BitMatrix pattern(0, next_round.size());
  for (const auto& g : gens) {
    BitVec row(next_round.size());
    for (size_t j = 0; j < next_round.size(); ++j)
      if (!g.commutes(next_round[j])) row.set(j, true);
    pattern.add_row(row);
  }

  auto repair = [&](const PauliOperator& rep) {
    BitVec need(next_round.size());
    for (size_t j = 0; j < next_round.size(); ++j)
      if (!rep.commutes(next_round[j])) need.set(j, true);
    if (!need.any()) return rep;
    BitVec combo;
    if (!pattern.solve(need, &combo))
      throw LogicalLoss("update_logicals: no stabilizer repairs the representative");
    PauliOperator out = rep;
    for (size_t i : combo.ones()) out *= gens[i];
    return out;
  };

  LogicalFrame out;
  for (const auto& p : frame.pairs) out.pairs.push_back({repair(p.x), repair(p.z), p.label});
  return out;
}

FpMat logical_action(const LogicalFrame& initial, const LogicalFrame& final_frame,
                     const StabilizerState& state) {
  size_t k = initial.k();
  if (final_frame.k() != k) throw FrameMismatch("logical_action: frame sizes differ");
  std::vector<PauliOperator> basis;
  for (const auto& p : initial.pairs) basis.push_back(p.x);
  for (const auto& p : initial.pairs) basis.push_back(p.z);
  std::vector<PauliOperator> all = basis;
  for (const auto& g : state.generators()) all.push_back(g);
  BitMatrix m(0, 2 * state.num_qubits());
  for (const auto& p : all) {
    BitVec row(2 * state.num_qubits());
    for (size_t q = 0; q < state.num_qubits(); ++q) {
      if (p.x_bit(q)) row.set(q, true);
      if (p.z_bit(q)) row.set(state.num_qubits() + q, true);
    }
    m.add_row(row);
  }

  FpMat action(2 * k, 2 * k, 2);
  auto solve_into = [&](const PauliOperator& rep, size_t col) {
    BitVec row(2 * state.num_qubits());
    for (size_t q = 0; q < state.num_qubits(); ++q) {
      if (rep.x_bit(q)) row.set(q, true);
      if (rep.z_bit(q)) row.set(state.num_qubits() + q, true);
    }
    BitVec combo;
    if (!m.solve(row, &combo))
      throw FrameMismatch("logical_action: final representative not expressible");
    for (size_t i = 0; i < 2 * k; ++i)
      if (combo.get(i)) action.at(i, col) = 1;
  };
  for (size_t j = 0; j < k; ++j) solve_into(final_frame.pairs[j].x, j);
  for (size_t j = 0; j < k; ++j) solve_into(final_frame.pairs[j].z, k + j);
  return action;
}

FpMat symplectic_identity(size_t k) { return FpMat::identity(2 * k, 2); }

FpMat symplectic_swap(size_t k, size_t a, size_t b) {
  FpMat m = symplectic_identity(k);
  m.at(a, a) = m.at(b, b) = m.at(k + a, k + a) = m.at(k + b, k + b) = 0;
  m.at(a, b) = m.at(b, a) = 1;
  m.at(k + a, k + b) = m.at(k + b, k + a) = 1;
  return m;
}

FpMat symplectic_hadamard(size_t k, size_t q) {
  FpMat m = symplectic_identity(k);
  m.at(q, q) = m.at(k + q, k + q) = 0;
  m.at(k + q, q) = m.at(q, k + q) = 1;
  return m;
}

FpMat symplectic_cnot(size_t k, size_t control, size_t target) {
  // X_c -> X_c X_t, Z_t -> Z_c Z_t.
  FpMat m = symplectic_identity(k);
  m.at(target, control) = 1;
  m.at(k + control, k + target) = 1;
  return m;
}

FpMat symplectic_phase(size_t k, size_t q) {
  // X_q -> Y_q = X_q Z_q.
  FpMat m = symplectic_identity(k);
  m.at(k + q, q) = 1;
  return m;
}

}  // namespace dacodes

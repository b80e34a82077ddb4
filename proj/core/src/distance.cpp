#include "dacodes/distance.hpp"

#include <functional>
#include <unordered_map>

#include "dacodes/parallel.hpp"

namespace dacodes {

namespace {

// Echelonized F2 row basis with fast membership reduction.
class RowBasis {
 public:
  void insert(BitVec row) {
    reduce(row);
    if (!row.any()) return;
    size_t piv = row.highest_bit();
    rows_.push_back(std::move(row));
    pivots_.push_back(piv);
  }

  bool contains(BitVec row) const {
    reduce(row);
    return !row.any();
  }

 private:
  void reduce(BitVec& row) const {
    for (size_t i = 0; i < rows_.size(); ++i)
      if (pivots_[i] < row.size() && row.get(pivots_[i])) row ^= rows_[i];
  }
  std::vector<BitVec> rows_;
  std::vector<size_t> pivots_;
};

BitVec symplectic_row(const PauliOperator& p) {
  size_t n = p.num_qubits();
  BitVec row(2 * n);
  for (size_t q = 0; q < n; ++q) {
    if (p.x_bit(q)) row.set(q, true);
    if (p.z_bit(q)) row.set(n + q, true);
  }
  return row;
}

struct SearchContext {
  size_t n = 0;
  size_t n_gens = 0;
  std::vector<size_t> qubits;
  std::vector<std::array<BitVec, 3>> syndromes;  // per qubit, flavor X/Y/Z
  RowBasis group;

  PauliOperator build(const std::vector<std::pair<size_t, int>>& factors) const {
    PauliOperator p(n);
    for (auto [q, f] : factors) p.set_pauli(q, f + 1);
    return p;
  }
};

SearchContext make_context(const StabilizerState& state, const std::vector<size_t>& qubits) {
  SearchContext ctx;
  ctx.n = state.num_qubits();
  ctx.qubits = qubits;
  const auto& gens = state.generators();
  ctx.n_gens = gens.size();
  for (const auto& g : gens) ctx.group.insert(symplectic_row(g));
  ctx.syndromes.resize(ctx.n);
  for (size_t q : qubits)
    for (int f = 0; f < 3; ++f) {
      PauliOperator p(ctx.n);
      p.set_pauli(q, f + 1);
      BitVec s(gens.size());
      for (size_t i = 0; i < gens.size(); ++i)
        if (!gens[i].commutes(p)) s.set(i, true);
      ctx.syndromes[q][f] = s;
    }
  return ctx;
}

// Plain enumeration at fixed weight; the lowest-position witness is chosen,
// so the result does not depend on the thread count.
std::optional<PauliOperator> enumerate_weight(const SearchContext& ctx, int w, int n_threads) {
  const auto& qs = ctx.qubits;
  if (w == 0 || w > int(qs.size())) return std::nullopt;
  std::vector<std::optional<PauliOperator>> slot(qs.size());

  parallel_for(qs.size(), n_threads, [&](size_t first_idx) {
    if (first_idx + w > qs.size()) return;
    std::vector<std::pair<size_t, int>> factors;
    bool found = false;
    std::function<void(size_t, int, const BitVec&)> rec = [&](size_t start, int remaining,
                                                              const BitVec& syndrome) {
      if (found) return;
      if (remaining == 0) {
        if (syndrome.any()) return;
        PauliOperator p = ctx.build(factors);
        if (ctx.group.contains(symplectic_row(p))) return;
        slot[first_idx] = p;
        found = true;
        return;
      }
      for (size_t i = start; i + remaining <= qs.size() && !found; ++i)
        for (int f = 0; f < 3 && !found; ++f) {
          BitVec s = syndrome;
          s ^= ctx.syndromes[qs[i]][f];
          factors.push_back({qs[i], f});
          rec(i + 1, remaining - 1, s);
          factors.pop_back();
        }
    };
    for (int f = 0; f < 3 && !found; ++f) {
      factors.assign(1, {qs[first_idx], f});
      rec(first_idx + 1, w - 1, ctx.syndromes[qs[first_idx]][f]);
    }
  });
  for (const auto& s : slot)
    if (s) return s;
  return std::nullopt;
}

// Meet-in-the-middle at fixed weight: supports split across two fixed
// halves of the qubit list, so every operator splits uniquely.
std::optional<PauliOperator> mitm_weight(const SearchContext& ctx, int w) {
  const auto& qs = ctx.qubits;
  size_t half = qs.size() / 2;
  std::vector<size_t> left(qs.begin(), qs.begin() + half);
  std::vector<size_t> right(qs.begin() + half, qs.end());

  auto key_of = [](const BitVec& v) {
    return std::string(reinterpret_cast<const char*>(v.words().data()),
                       v.words().size() * sizeof(uint64_t));
  };

  auto collect = [&](const std::vector<size_t>& side, int k) {
    std::unordered_map<std::string, std::vector<std::vector<std::pair<size_t, int>>>> table;
    std::vector<std::pair<size_t, int>> factors;
    std::function<void(size_t, int, const BitVec&)> rec = [&](size_t start, int remaining,
                                                              const BitVec& syndrome) {
      if (remaining == 0) {
        table[key_of(syndrome)].push_back(factors);
        return;
      }
      for (size_t i = start; i + remaining <= side.size(); ++i)
        for (int f = 0; f < 3; ++f) {
          BitVec s = syndrome;
          s ^= ctx.syndromes[side[i]][f];
          factors.push_back({side[i], f});
          rec(i + 1, remaining - 1, s);
          factors.pop_back();
        }
    };
    rec(0, k, BitVec(ctx.n_gens));
    return table;
  };

  for (int wl = 0; wl <= w; ++wl) {
    int wr = w - wl;
    if (wl > int(left.size()) || wr > int(right.size())) continue;
    auto lt = collect(left, wl);
    auto rt = collect(right, wr);
    for (const auto& [key, lfactors] : lt) {
      auto it = rt.find(key);
      if (it == rt.end()) continue;
      for (const auto& lf : lfactors)
        for (const auto& rf : it->second) {
          auto factors = lf;
          factors.insert(factors.end(), rf.begin(), rf.end());
          PauliOperator p = ctx.build(factors);
          if (!ctx.group.contains(symplectic_row(p))) return p;
        }
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_nontrivial_logical(const StabilizerState& state, const PauliOperator& p) {
  if (!state.commutes_with_all(p)) return false;
  RowBasis basis;
  for (const auto& g : state.generators()) basis.insert(symplectic_row(g));
  return !basis.contains(symplectic_row(p));
}

DistanceResult code_distance(const StabilizerState& state, int w_max,
                             const std::vector<size_t>& support_qubits, int n_threads) {
  SearchContext ctx = make_context(state, support_qubits);
  for (int w = 1; w <= w_max; ++w) {
    std::optional<PauliOperator> hit =
        w <= 5 ? enumerate_weight(ctx, w, n_threads) : mitm_weight(ctx, w);
    if (hit) {
      if (!is_nontrivial_logical(state, *hit))
        throw InternalError("code_distance: witness failed the rank check");
      return {w, *hit};
    }
  }
  return {std::nullopt, PauliOperator(state.num_qubits())};
}

}  // namespace dacodes

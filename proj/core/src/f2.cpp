#include "dacodes/f2.hpp"

#include <algorithm>
#include <bit>

namespace dacodes {

void BitVec::resize(size_t n) {
  n_ = std::max(n_, n);
  w_.resize((n_ + 63) / 64, 0);
}

void BitVec::operator^=(const BitVec& o) {
  if (o.n_ > n_) resize(o.n_);
  for (size_t i = 0; i < o.w_.size(); ++i) w_[i] ^= o.w_[i];
}

bool BitVec::operator==(const BitVec& o) const {
  size_t k = std::max(w_.size(), o.w_.size());
  for (size_t i = 0; i < k; ++i) {
    uint64_t a = i < w_.size() ? w_[i] : 0;
    uint64_t b = i < o.w_.size() ? o.w_[i] : 0;
    if (a != b) return false;
  }
  return true;
}

bool BitVec::and_parity(const BitVec& o) const {
  size_t k = std::min(w_.size(), o.w_.size());
  uint64_t acc = 0;
  for (size_t i = 0; i < k; ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1;
}

size_t BitVec::popcount() const {
  size_t c = 0;
  for (uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool BitVec::any() const {
  for (uint64_t w : w_)
    if (w) return true;
  return false;
}

size_t BitVec::highest_bit() const {
  for (size_t i = w_.size(); i-- > 0;)
    if (w_[i]) return i * 64 + (63 - std::countl_zero(w_[i]));
  return SIZE_MAX;
}

std::vector<size_t> BitVec::ones() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < w_.size(); ++i) {
    uint64_t w = w_[i];
    while (w) {
      out.push_back(i * 64 + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

std::string BitVec::to_string() const {
  std::string s(n_, '0');
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::vector<size_t> BitMatrix::rref() {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < rows_.size(); ++c) {
    size_t sel = SIZE_MAX;
    for (size_t i = r; i < rows_.size(); ++i)
      if (rows_[i].get(c)) {
        sel = i;
        break;
      }
    if (sel == SIZE_MAX) continue;
    std::swap(rows_[r], rows_[sel]);
    for (size_t i = 0; i < rows_.size(); ++i)
      if (i != r && rows_[i].get(c)) rows_[i] ^= rows_[r];
    pivots.push_back(c);
    ++r;
  }
  rows_.resize(r);
  return pivots;
}

size_t BitMatrix::rank() const {
  BitMatrix tmp = *this;
  return tmp.rref().size();
}

bool BitMatrix::solve(const BitVec& target, BitVec* combo_out) const {
  // Eliminate with an identity tag block tracking row combinations.
  size_t n = rows_.size();
  std::vector<BitVec> work(rows_.begin(), rows_.end());
  std::vector<BitVec> tag(n, BitVec(n));
  for (size_t i = 0; i < n; ++i) tag[i].set(i, true);
  BitVec t = target;
  t.resize(cols_);
  BitVec tcombo(n);

  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < n; ++c) {
    size_t sel = SIZE_MAX;
    for (size_t i = r; i < n; ++i)
      if (work[i].get(c)) {
        sel = i;
        break;
      }
    if (sel == SIZE_MAX) continue;
    std::swap(work[r], work[sel]);
    std::swap(tag[r], tag[sel]);
    for (size_t i = 0; i < n; ++i)
      if (i != r && work[i].get(c)) {
        work[i] ^= work[r];
        tag[i] ^= tag[r];
      }
    if (t.get(c)) {
      t ^= work[r];
      tcombo ^= tag[r];
    }
    ++r;
  }
  if (t.any()) return false;
  if (combo_out) *combo_out = tcombo;
  return true;
}

}  // namespace dacodes

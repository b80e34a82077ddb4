#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace dacodes {

/// Dense bit vector over F2, packed into 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  /// Grows to n bits, preserving contents. Shrinking is not supported.
  void resize(size_t n);

  void operator^=(const BitVec& o);
  bool operator==(const BitVec& o) const;

  /// Parity of the AND with `o` (word-parallel popcount). Sizes may differ;
  /// the shorter vector is treated as zero-extended.
  bool and_parity(const BitVec& o) const;

  size_t popcount() const;
  bool any() const;
  /// Index of the highest set bit, or SIZE_MAX if zero.
  size_t highest_bit() const;

  std::vector<size_t> ones() const;
  std::string to_string() const;

  const std::vector<uint64_t>& words() const { return w_; }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

struct BitVecHash {
  size_t operator()(const BitVec& v) const {
    size_t h = v.size();
    for (uint64_t w : v.words()) h = h * 1000003u ^ std::hash<uint64_t>{}(w);
    return h;
  }
};

/// Row-major matrix over F2; rows are BitVecs of equal width.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

  size_t rows() const { return rows_.size(); }
  size_t cols() const { return cols_; }
  BitVec& row(size_t i) { return rows_[i]; }
  const BitVec& row(size_t i) const { return rows_[i]; }
  void add_row(BitVec v) { rows_.push_back(std::move(v)); }

  bool get(size_t r, size_t c) const { return rows_[r].get(c); }
  void set(size_t r, size_t c, bool v) { rows_[r].set(c, v); }

  /// In-place reduced row echelon form; returns pivot column per surviving row.
  /// Zero rows are dropped.
  std::vector<size_t> rref();

  size_t rank() const;

  /// Expresses `target` as an F2 combination of the rows. Returns the
  /// combination (bit i set = row i participates) or nullopt.
  /// Rows are not modified.
  bool solve(const BitVec& target, BitVec* combo_out = nullptr) const;

 private:
  size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

}  // namespace dacodes

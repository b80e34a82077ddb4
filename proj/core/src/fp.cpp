#include "dacodes/fp.hpp"

#include <sstream>

namespace dacodes {

bool is_prime(uint8_t p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint8_t fp_inv(uint8_t a, uint8_t p) {
  a %= p;
  if (a == 0) throw Error("fp_inv: zero has no inverse");
  // p is tiny; scan.
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return uint8_t(x);
  throw Error("fp_inv: not invertible (p not prime?)");
}

FpVec fp_add(const FpVec& a, const FpVec& b, uint8_t p) {
  if (a.size() != b.size()) throw DimensionMismatch("fp_add: length mismatch");
  FpVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = uint8_t((a[i] + b[i]) % p);
  return out;
}

FpVec fp_scale(const FpVec& a, uint8_t s, uint8_t p) {
  FpVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = uint8_t((a[i] * s) % p);
  return out;
}

void fp_axpy(FpVec& a, uint8_t s, const FpVec& b, uint8_t p) {
  if (a.size() != b.size()) throw DimensionMismatch("fp_axpy: length mismatch");
  for (size_t i = 0; i < a.size(); ++i) a[i] = uint8_t((a[i] + s * b[i]) % p);
}

bool fp_is_zero(const FpVec& a) {
  for (uint8_t x : a)
    if (x) return false;
  return true;
}

std::string fp_to_string(const FpVec& a) {
  std::string s;
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(int(a[i]));
  }
  return s;
}

FpVec fp_parse(const std::string& csv, uint8_t p) {
  FpVec out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int v = std::stoi(tok);
    v %= p;
    if (v < 0) v += p;
    out.push_back(uint8_t(v));
  }
  return out;
}

FpMat FpMat::identity(size_t n, uint8_t p) {
  FpMat m(n, n, p);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::from_rows(const std::vector<FpVec>& rows, uint8_t p) {
  if (rows.empty()) return FpMat(0, 0, p);
  FpMat m(rows.size(), rows[0].size(), p);
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

void FpMat::set_row(size_t i, const FpVec& v) {
  if (v.size() != c_) throw DimensionMismatch("FpMat::set_row");
  for (size_t j = 0; j < c_; ++j) at(i, j) = uint8_t(v[j] % p_);
}

void FpMat::add_row(const FpVec& v) {
  if (r_ == 0 && c_ == 0) c_ = v.size();
  if (v.size() != c_) throw DimensionMismatch("FpMat::add_row");
  ++r_;
  a_.resize(r_ * c_);
  set_row(r_ - 1, v);
}

std::vector<FpVec> FpMat::row_list() const {
  std::vector<FpVec> out;
  out.reserve(r_);
  for (size_t i = 0; i < r_; ++i) out.push_back(row(i));
  return out;
}

FpMat FpMat::mul(const FpMat& o) const {
  if (c_ != o.r_) throw DimensionMismatch("FpMat::mul");
  FpMat out(r_, o.c_, p_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t k = 0; k < c_; ++k) {
      uint8_t v = at(i, k);
      if (!v) continue;
      for (size_t j = 0; j < o.c_; ++j)
        out.at(i, j) = uint8_t((out.at(i, j) + v * o.at(k, j)) % p_);
    }
  return out;
}

FpVec FpMat::mul_vec(const FpVec& v) const {
  if (v.size() != c_) throw DimensionMismatch("FpMat::mul_vec");
  FpVec out(r_, 0);
  for (size_t i = 0; i < r_; ++i) {
    unsigned acc = 0;
    for (size_t j = 0; j < c_; ++j) acc += at(i, j) * v[j];
    out[i] = uint8_t(acc % p_);
  }
  return out;
}

FpVec FpMat::vec_mul(const FpVec& v) const {
  if (v.size() != r_) throw DimensionMismatch("FpMat::vec_mul");
  FpVec out(c_, 0);
  for (size_t i = 0; i < r_; ++i) {
    if (!v[i]) continue;
    for (size_t j = 0; j < c_; ++j) out[j] = uint8_t((out[j] + v[i] * at(i, j)) % p_);
  }
  return out;
}

FpMat FpMat::transposed() const {
  FpMat out(c_, r_, p_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
  return out;
}

std::vector<size_t> FpMat::rref() {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < c_ && r < r_; ++c) {
    size_t sel = SIZE_MAX;
    for (size_t i = r; i < r_; ++i)
      if (at(i, c)) {
        sel = i;
        break;
      }
    if (sel == SIZE_MAX) continue;
    for (size_t j = 0; j < c_; ++j) std::swap(at(r, j), at(sel, j));
    uint8_t inv = fp_inv(at(r, c), p_);
    for (size_t j = 0; j < c_; ++j) at(r, j) = uint8_t((at(r, j) * inv) % p_);
    for (size_t i = 0; i < r_; ++i) {
      if (i == r || !at(i, c)) continue;
      uint8_t f = uint8_t(p_ - at(i, c));
      for (size_t j = 0; j < c_; ++j) at(i, j) = uint8_t((at(i, j) + f * at(r, j)) % p_);
    }
    pivots.push_back(c);
    ++r;
  }
  r_ = r;
  a_.resize(r_ * c_);
  return pivots;
}

size_t FpMat::rank() const {
  FpMat tmp = *this;
  return tmp.rref().size();
}

std::optional<FpMat> FpMat::inverse() const {
  if (r_ != c_) return std::nullopt;
  FpMat aug(r_, 2 * c_, p_);
  for (size_t i = 0; i < r_; ++i) {
    for (size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, c_ + i) = 1;
  }
  auto piv = aug.rref();
  if (piv.size() != r_) return std::nullopt;
  for (size_t k = 0; k < piv.size(); ++k)
    if (piv[k] != k) return std::nullopt;
  FpMat out(r_, c_, p_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) out.at(i, j) = aug.at(i, c_ + j);
  return out;
}

FpMat FpMat::column_kernel() const {
  FpMat red = *this;
  auto pivots = red.rref();
  std::vector<bool> is_pivot(c_, false);
  for (size_t c : pivots) is_pivot[c] = true;
  FpMat out(0, c_, p_);
  for (size_t c = 0; c < c_; ++c) {
    if (is_pivot[c]) continue;
    FpVec v(c_, 0);
    v[c] = 1;
    for (size_t k = 0; k < pivots.size(); ++k) {
      uint8_t e = red.at(k, c);
      if (e) v[pivots[k]] = uint8_t(p_ - e);
    }
    out.add_row(v);
  }
  return out;
}

std::optional<FpVec> FpMat::solve_row_combination(const FpVec& target) const {
  if (target.size() != c_) throw DimensionMismatch("solve_row_combination");
  // Augment each row with an identity tag; eliminate; reduce the target.
  size_t n = r_;
  FpMat work(n, c_ + n, p_);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < c_; ++j) work.at(i, j) = at(i, j);
    work.at(i, c_ + i) = 1;
  }
  FpVec t(c_ + n, 0);
  for (size_t j = 0; j < c_; ++j) t[j] = target[j];

  size_t r = 0;
  for (size_t c = 0; c < c_ && r < n; ++c) {
    size_t sel = SIZE_MAX;
    for (size_t i = r; i < n; ++i)
      if (work.at(i, c)) {
        sel = i;
        break;
      }
    if (sel == SIZE_MAX) continue;
    for (size_t j = 0; j < work.cols(); ++j) std::swap(work.at(r, j), work.at(sel, j));
    uint8_t inv = fp_inv(work.at(r, c), p_);
    for (size_t j = 0; j < work.cols(); ++j) work.at(r, j) = uint8_t((work.at(r, j) * inv) % p_);
    for (size_t i = 0; i < n; ++i) {
      if (i == r || !work.at(i, c)) continue;
      uint8_t f = uint8_t(p_ - work.at(i, c));
      for (size_t j = 0; j < work.cols(); ++j)
        work.at(i, j) = uint8_t((work.at(i, j) + f * work.at(r, j)) % p_);
    }
    if (t[c]) {
      uint8_t f = uint8_t(p_ - t[c]);
      for (size_t j = 0; j < work.cols(); ++j) t[j] = uint8_t((t[j] + f * work.at(r, j)) % p_);
    }
    ++r;
  }
  for (size_t j = 0; j < c_; ++j)
    if (t[j]) return std::nullopt;
  FpVec combo(n, 0);
  // The tag columns accumulated -target's combination; negate.
  for (size_t i = 0; i < n; ++i) combo[i] = uint8_t((p_ - t[c_ + i]) % p_);
  return combo;
}

std::string FpMat::to_string() const {
  std::string s;
  for (size_t i = 0; i < r_; ++i) {
    s += fp_to_string(row(i));
    s += '\n';
  }
  return s;
}

}  // namespace dacodes

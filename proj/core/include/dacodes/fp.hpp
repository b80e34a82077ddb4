#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dacodes {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InternalError : Error {
  using Error::Error;
};

/// Vector over the prime field F_p with entries stored as bytes in [0, p).
using FpVec = std::vector<uint8_t>;

uint8_t fp_inv(uint8_t a, uint8_t p);
bool is_prime(uint8_t p);

FpVec fp_add(const FpVec& a, const FpVec& b, uint8_t p);
FpVec fp_scale(const FpVec& a, uint8_t s, uint8_t p);
/// a += s*b
void fp_axpy(FpVec& a, uint8_t s, const FpVec& b, uint8_t p);
bool fp_is_zero(const FpVec& a);
std::string fp_to_string(const FpVec& a);
FpVec fp_parse(const std::string& csv, uint8_t p);

/// Small dense row-major matrix over F_p. Dimensions in this project stay
/// tiny (2N <= 16), so no packing tricks are needed here.
class FpMat {
 public:
  FpMat() = default;
  FpMat(size_t rows, size_t cols, uint8_t p) : r_(rows), c_(cols), p_(p), a_(rows * cols, 0) {}

  static FpMat identity(size_t n, uint8_t p);
  static FpMat from_rows(const std::vector<FpVec>& rows, uint8_t p);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  uint8_t p() const { return p_; }

  uint8_t at(size_t i, size_t j) const { return a_[i * c_ + j]; }
  uint8_t& at(size_t i, size_t j) { return a_[i * c_ + j]; }

  FpVec row(size_t i) const { return FpVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }
  void set_row(size_t i, const FpVec& v);
  void add_row(const FpVec& v);
  std::vector<FpVec> row_list() const;

  FpMat mul(const FpMat& o) const;
  FpVec mul_vec(const FpVec& v) const;       // this * v  (v as column)
  FpVec vec_mul(const FpVec& v) const;       // v * this  (v as row)
  FpMat transposed() const;

  /// Reduced row echelon form in place; zero rows dropped. Returns pivot cols.
  std::vector<size_t> rref();
  size_t rank() const;

  std::optional<FpMat> inverse() const;

  /// Basis of { x : this * x = 0 } (column kernel), rows of the result.
  FpMat column_kernel() const;
  /// Basis of { y : y * this = 0 } (left kernel), rows of the result.
  FpMat left_kernel() const { return transposed().column_kernel(); }

  /// Solves y * rows = target; returns the combination y or nullopt.
  std::optional<FpVec> solve_row_combination(const FpVec& target) const;

  bool operator==(const FpMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  std::string to_string() const;

 private:
  size_t r_ = 0, c_ = 0;
  uint8_t p_ = 2;
  std::vector<uint8_t> a_;
};

}  // namespace dacodes

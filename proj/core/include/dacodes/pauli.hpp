#pragma once

#include <cstdint>
#include <string>

#include "dacodes/f2.hpp"
#include "dacodes/fp.hpp"

namespace dacodes {

/// n-qubit Pauli operator i^phase * X^x Z^z, bit-packed. Group membership
/// and commutation work on the sign-stripped (x, z) part; the phase mod 4
/// is kept so products of Hermitian Paulis stay Hermitian.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(size_t n) : n_(n), x_(n), z_(n) {}
  /// Parses "XIZY" or "+XIZY"/"-XIZY".
  static PauliOperator from_string(const std::string& s);

  size_t num_qubits() const { return n_; }
  const BitVec& x() const { return x_; }
  const BitVec& z() const { return z_; }
  uint8_t phase4() const { return phase_; }

  /// Exposed sign: 0 for +, 1 for -. Requires a Hermitian operator.
  bool sign() const;

  bool x_bit(size_t q) const { return x_.get(q); }
  bool z_bit(size_t q) const { return z_.get(q); }
  /// 0=I, 1=X, 2=Y, 3=Z at qubit q.
  int pauli_at(size_t q) const;
  void set_pauli(size_t q, int p);

  bool commutes(const PauliOperator& o) const;
  void operator*=(const PauliOperator& o);
  PauliOperator operator*(const PauliOperator& o) const;
  void negate() { phase_ = uint8_t((phase_ + 2) & 3); }

  size_t weight() const;
  bool is_identity() const { return !x_.any() && !z_.any(); }
  /// Equal up to phase.
  bool same_pauli(const PauliOperator& o) const { return x_ == o.x_ && z_ == o.z_; }
  bool operator==(const PauliOperator& o) const {
    return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
  }

  std::string to_string() const;

 private:
  size_t n_ = 0;
  BitVec x_, z_;
  uint8_t phase_ = 0;
};

}  // namespace dacodes

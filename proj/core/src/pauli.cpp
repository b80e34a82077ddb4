#include "dacodes/pauli.hpp"
#include <bit>

namespace dacodes {

PauliOperator PauliOperator::from_string(const std::string& s) {
  size_t start = 0;
  uint8_t phase = 0;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    if (s[0] == '-') phase = 2;
    start = 1;
  }
  PauliOperator p(s.size() - start);
  p.phase_ = phase;
  for (size_t i = start; i < s.size(); ++i) {
    switch (s[i]) {
      case 'I': case '_': break;
      case 'X': p.set_pauli(i - start, 1); break;
      case 'Y': p.set_pauli(i - start, 2); break;
      case 'Z': p.set_pauli(i - start, 3); break;
      default: throw Error("PauliOperator::from_string: bad character");
    }
  }
  return p;
}

bool PauliOperator::sign() const {
  // Hermitian phase is i^y * (+-1) where y counts Y factors.
  size_t y = 0;
  for (size_t w = 0; w < x_.words().size(); ++w) {
    uint64_t a = x_.words()[w];
    uint64_t b = w < z_.words().size() ? z_.words()[w] : 0;
    y += std::popcount(a & b);
  }
  uint8_t h = uint8_t((phase_ + 4 - (y & 3)) & 3);
  if (h & 1) throw InternalError("PauliOperator::sign: operator is not Hermitian");
  return h == 2;
}

int PauliOperator::pauli_at(size_t q) const {
  bool xb = x_.get(q), zb = z_.get(q);
  if (xb && zb) return 2;
  if (xb) return 1;
  if (zb) return 3;
  return 0;
}

void PauliOperator::set_pauli(size_t q, int p) {
  // Keeps the convention Y = i XZ: adds i per Y factor.
  int prev = pauli_at(q);
  if (prev == 2) phase_ = uint8_t((phase_ + 3) & 3);
  x_.set(q, p == 1 || p == 2);
  z_.set(q, p == 3 || p == 2);
  if (p == 2) phase_ = uint8_t((phase_ + 1) & 3);
}

bool PauliOperator::commutes(const PauliOperator& o) const {
  if (n_ != o.n_) throw DimensionMismatch("PauliOperator::commutes");
  return !(x_.and_parity(o.z_) ^ z_.and_parity(o.x_));
}

void PauliOperator::operator*=(const PauliOperator& o) {
  if (n_ != o.n_) throw DimensionMismatch("PauliOperator::operator*=");
  // (X^a Z^b)(X^c Z^d) = (-1)^{b.c} X^{a+c} Z^{b+d}
  bool anti = z_.and_parity(o.x_);
  phase_ = uint8_t((phase_ + o.phase_ + (anti ? 2 : 0)) & 3);
  x_ ^= o.x_;
  z_ ^= o.z_;
}

PauliOperator PauliOperator::operator*(const PauliOperator& o) const {
  PauliOperator out = *this;
  out *= o;
  return out;
}

size_t PauliOperator::weight() const {
  size_t w = 0;
  for (size_t i = 0; i < x_.words().size(); ++i) {
    uint64_t a = x_.words()[i];
    uint64_t b = i < z_.words().size() ? z_.words()[i] : 0;
    w += std::popcount(a | b);
  }
  return w;
}

std::string PauliOperator::to_string() const {
  std::string s;
  s += sign() ? '-' : '+';
  for (size_t q = 0; q < n_; ++q) s += "IXYZ"[pauli_at(q)];
  return s;
}

}  // namespace dacodes

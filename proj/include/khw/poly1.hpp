#pragma once
// Dense univariate polynomials over F2 with degree < 64, packed into a
// uint64_t (bit k = coefficient of t^k). Enough for the torsion exponents
// that arise at desk scale; degree overflow asserts.

#include <cassert>
#include <cstdint>
#include <string>

namespace khw {

struct Poly1 {
  uint64_t bits = 0;

  static Poly1 zero() { return {0}; }
  static Poly1 one() { return {1}; }
  static Poly1 tpow(int k) {
    assert(k >= 0 && k < 64);
    return {uint64_t(1) << k};
  }

  bool is_zero() const { return bits == 0; }
  bool is_one() const { return bits == 1; }
  int degree() const { return bits ? 63 - __builtin_clzll(bits) : -1; }
  // True iff a pure power t^k.
  bool is_monomial() const { return bits && (bits & (bits - 1)) == 0; }

  friend Poly1 operator+(Poly1 a, Poly1 b) { return {a.bits ^ b.bits}; }
  friend Poly1 operator*(Poly1 a, Poly1 b) {
    uint64_t r = 0, x = a.bits;
    if (a.bits && b.bits) assert(a.degree() + b.degree() < 64);
    for (uint64_t y = b.bits; y; y >>= 1, x <<= 1)
      if (y & 1) r ^= x;
    return {r};
  }
  friend bool operator==(Poly1 a, Poly1 b) { return a.bits == b.bits; }

  // Division with remainder: *this = q*d + r, deg r < deg d.
  void divmod(Poly1 d, Poly1 &q, Poly1 &r) const;
  bool divides(Poly1 other) const {
    Poly1 q, r;
    other.divmod(*this, q, r);
    return r.is_zero();
  }

  std::string str() const;
};

Poly1 poly1_gcd(Poly1 a, Poly1 b);

}  // namespace khw

#pragma once
// Sparse polynomials over F2 in the formal variables H and W.
// H carries bigrading (0,-2), W carries (-1,-2). In the localized ring the
// H-exponent may be negative. Coefficients are F2, so an element is just a
// set of monomials; addition is symmetric difference.

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace khw {

enum class Ring : uint8_t {
  F2,      // H = W = 0
  F2H,     // W = 0
  F2W,     // H = 0
  F2HW,    // full ring
  F2HlocW  // F2[H, H^-1, W]
};

const char *ring_name(Ring r);

struct Mono {
  int32_t h = 0;  // H exponent (may be negative in F2HlocW)
  int32_t w = 0;  // W exponent (always >= 0)
  friend bool operator==(const Mono &, const Mono &) = default;
};

// Packed monomial key; ordering is (w, h) lexicographic which is arbitrary
// but fixed, giving deterministic term order.
inline uint64_t mono_key(Mono m) {
  return (uint64_t(uint32_t(m.w)) << 32) | uint32_t(m.h + (1 << 30));
}
inline Mono key_mono(uint64_t k) {
  return Mono{int32_t(uint32_t(k & 0xffffffffu)) - (1 << 30), int32_t(k >> 32)};
}

class RingElement {
 public:
  RingElement() = default;
  static RingElement zero() { return {}; }
  static RingElement one() { return monomial(0, 0); }
  static RingElement monomial(int h, int w) {
    RingElement e;
    e.keys_.push_back(mono_key(Mono{h, w}));
    return e;
  }

  bool is_zero() const { return keys_.empty(); }
  size_t num_terms() const { return keys_.size(); }
  std::vector<Mono> terms() const;

  bool operator==(const RingElement &o) const { return keys_ == o.keys_; }

  void add_monomial(int h, int w);            // xor one term in
  RingElement &operator+=(const RingElement &o);
  friend RingElement operator+(RingElement a, const RingElement &b) { return a += b; }
  friend RingElement operator*(const RingElement &a, const RingElement &b);

  // A unit is a single monomial that is invertible in the given ring:
  // 1 everywhere; additionally H^a (w = 0) in the localized ring.
  bool is_unit(Ring ring) const;
  RingElement unit_inverse(Ring ring) const;

  // Specializations used when retagging complexes. set_* substitute 0 or 1.
  RingElement with_h0() const;
  RingElement with_h1() const;
  RingElement with_w0() const;
  RingElement with_w1() const;

  std::string str() const;  // e.g. "1 + H W^2"

 private:
  std::vector<uint64_t> keys_;  // sorted, unique
  void normalize();
};

}  // namespace khw

#include "khw/poly1.hpp"

namespace khw {

void Poly1::divmod(Poly1 d, Poly1 &q, Poly1 &r) const {
  assert(!d.is_zero());
  uint64_t rem = bits, quot = 0;
  int dd = d.degree();
  while (rem && (63 - __builtin_clzll(rem)) >= dd) {
    int sh = (63 - __builtin_clzll(rem)) - dd;
    rem ^= d.bits << sh;
    quot ^= uint64_t(1) << sh;
  }
  q = {quot};
  r = {rem};
}

Poly1 poly1_gcd(Poly1 a, Poly1 b) {
  while (!b.is_zero()) {
    Poly1 q, r;
    a.divmod(b, q, r);
    a = b;
    b = r;
  }
  return a;
}

std::string Poly1::str() const {
  if (bits == 0) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    if (!((bits >> k) & 1)) continue;
    if (!s.empty()) s += "+";
    if (k == 0) s += "1";
    else if (k == 1) s += "t";
    else s += "t^" + std::to_string(k);
  }
  return s;
}

}  // namespace khw

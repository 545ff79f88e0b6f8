#include "doctest.h"

#include <random>

#include "khw/poly1.hpp"
#include "khw/ring.hpp"

using namespace khw;

TEST_CASE("ring elements: xor addition and multiplication") {
  RingElement a = RingElement::monomial(1, 0);  // H
  RingElement b = RingElement::monomial(0, 2);  // W^2
  RingElement s = a + b;
  CHECK(s.num_terms() == 2);
  CHECK((s + s).is_zero());
  RingElement p = s * s;  // H^2 + W^4 over F2 (cross terms cancel)
  CHECK(p.num_terms() == 2);
  CHECK(p == RingElement::monomial(2, 0) + RingElement::monomial(0, 4));
  CHECK(s.str() == "H + W^2");
}

TEST_CASE("units per ring") {
  RingElement one = RingElement::one();
  RingElement h = RingElement::monomial(1, 0);
  RingElement w = RingElement::monomial(0, 1);
  CHECK(one.is_unit(Ring::F2HW));
  CHECK(!h.is_unit(Ring::F2HW));
  CHECK(!w.is_unit(Ring::F2HlocW));
  CHECK(h.is_unit(Ring::F2HlocW));
  CHECK(h.unit_inverse(Ring::F2HlocW) == RingElement::monomial(-1, 0));
  CHECK(!(h + one).is_unit(Ring::F2HlocW));
}

TEST_CASE("specialization maps") {
  RingElement e = RingElement::one() + RingElement::monomial(1, 1) +
                  RingElement::monomial(2, 0);
  CHECK(e.with_h0() == RingElement::one());
  CHECK(e.with_w0() == RingElement::one() + RingElement::monomial(2, 0));
  // H=1: 1 + W + 1 = W
  CHECK(e.with_h1() == RingElement::monomial(0, 1));
}

TEST_CASE("poly1 division and gcd") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Poly1 a{rng() & 0xffff}, b{rng() & 0xff};
    if (b.is_zero()) continue;
    Poly1 q, r;
    a.divmod(b, q, r);
    CHECK(q * b + r == a);
    CHECK((r.is_zero() || r.degree() < b.degree()));
    Poly1 g = poly1_gcd(a, b);
    if (!a.is_zero()) CHECK(g.divides(a));
    CHECK(g.divides(b));
  }
  CHECK(Poly1::tpow(3).str() == "t^3");
  CHECK((Poly1::tpow(2) + Poly1::one()).str() == "t^2+1");
}

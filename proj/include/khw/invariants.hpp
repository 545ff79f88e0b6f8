#pragma once
// Upright sets, orientation generators, the s^U concordance invariants and
// the four-ball-genus bound.

#include <map>
#include <string>
#include <vector>

#include "khw/complex.hpp"

namespace khw {

// An upward-closed subset of Z x (2Z+1). Parametric sets use exact rational
// data: membership is a t-weighted half-plane with a boundary rule r.
struct UprightSet {
  enum class Kind { Min, Max, Param };
  Kind kind = Kind::Min;
  long long tn = 1, td = 1;  // t = tn/td in [0,1]
  long long sn = 0, sd = 1;  // s = sn/sd in [-1,1]
  std::map<std::pair<long long, long long>, int> r_override;
  int translate = 0;  // even

  bool member(long long a, long long b) const;  // b must be odd
  UprightSet shifted(int n) const;              // U[translate + n]
  bool centered() const { return member(0, 1) && !member(0, -1); }

  static UprightSet minimal() { return UprightSet{}; }
  static UprightSet maximal();
  static UprightSet projective(long long tn, long long td);  // U_(t)
  static UprightSet parse(const std::string &spec);
  std::string str() const;
};

// Orientations are encoded as component flip masks relative to the stored
// orientation of the diagram.
uint32_t oriented_resolution(const LinkDiagram &d, uint32_t flips);

// The Bar-Natan generator chain over F2[H]: terms (circle monomial, H power)
// over the oriented resolution, from the checkerboard factor rule.
struct BNChain {
  uint32_t u = 0;
  std::vector<std::pair<uint32_t, int>> terms;
};
BNChain bn_generator_chain(const LinkDiagram &d, uint32_t flips);

// Linking number of the sublink of unflipped components with the rest.
int linking_split(const LinkDiagram &d, uint32_t flips);

// Chain-level machinery on the filtered total complex (H = W = 1).
struct FiltCtx {
  LinkDiagram d;
  TotalComplex tc;
  Complex ftot;  // F2, ungraded
  Complex fbn;   // F2, gh-graded (independent Rasmussen route)
  explicit FiltCtx(const LinkDiagram &diagram);

  std::vector<uint8_t> chain_of(const BNChain &bn) const;  // H=1 expansion
  // Lift a Bar-Natan cycle to a (d+h)-cycle by ascending-gh solves.
  std::vector<uint8_t> lift_to_ftot(uint32_t flips) const;
  bool is_ftot_cycle(const std::vector<uint8_t> &c) const;
};

// max even n such that rep + im(delta) has a representative supported on
// generators with bigrading in U[n]; INT_MIN if none in the search window.
int max_translate_with_rep(const Complex &cx, const std::vector<uint8_t> &rep,
                           const UprightSet &u);

enum class SVariant { O, MinusO, Pair };
int s_invariant(const LinkDiagram &d, const UprightSet &u, SVariant variant);

// Rasmussen s over F2 from the W = 0 specialization alone (quantum
// filtration of the filtered Bar-Natan complex).
int rasmussen_s_bn(const LinkDiagram &d);

struct Rational {
  long long num = 0, den = 1;
};
Rational genus_bound(const LinkDiagram &d);

}  // namespace khw

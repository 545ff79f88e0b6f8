#pragma once
// The total complex over F2[H,W] of a decorated diagram, its
// specializations, reduced versions, and the birth/death/saddle chain maps.

#include <cstdint>
#include <vector>

#include "khw/algebra.hpp"
#include "khw/contrib.hpp"
#include "khw/diagram.hpp"
#include "khw/planar.hpp"

namespace khw {

struct TotalComplex {
  Complex cx;  // over F2[H,W], bigraded
  int n = 0;   // crossings
  std::vector<int> offset;      // generator base per vertex u
  std::vector<int> ncirc;       // circle count per u
  std::vector<int> bp_circle;   // basepoint circle per u (-1 when none)
  int gen_index(uint32_t u, uint32_t x) const { return offset[u] + (int)x; }
};

// Entry rule: for u in v with index i = |v \ u| >= 1,
//   <delta (u,x), (v,y)> = c_d W^{i-1} + c_h H W^{i-1}.
TotalComplex build_total(const LinkDiagram &d);

enum class HSpec { Keep, Zero, One, Invert };
enum class WSpec { Keep, Zero, One };
Complex specialize(const Complex &c, HSpec h, WSpec w);

// Named specializations.
inline Complex theory_kh(const Complex &c) { return specialize(c, HSpec::Zero, WSpec::Zero); }
inline Complex theory_bn(const Complex &c) { return specialize(c, HSpec::Keep, WSpec::Zero); }
inline Complex theory_sz(const Complex &c) { return specialize(c, HSpec::Zero, WSpec::Keep); }
inline Complex theory_fbn(const Complex &c) { return specialize(c, HSpec::One, WSpec::Zero); }
inline Complex theory_fhtot(const Complex &c) { return specialize(c, HSpec::One, WSpec::Keep); }
inline Complex theory_ftot(const Complex &c) { return specialize(c, HSpec::One, WSpec::One); }
inline Complex theory_localized(const Complex &c) {
  return specialize(c, HSpec::Invert, WSpec::Keep);
}

// Reduced complexes of a pointed diagram: minus = span of generators whose
// monomial contains the basepoint circle (a subcomplex), plus = quotient;
// quantum gradings adjusted by +1 / -1.
struct ReducedPair {
  Complex minus, plus;
};
ReducedPair reduced_split(const TotalComplex &tc, const LinkDiagram &d);

// The h-endomorphism block for a crossing subset s: entries of c_h between
// vertices u and u|s (as an F2 matrix on all generators).
f2::BitMatrix h_block(const TotalComplex &tc, const LinkDiagram &d, uint32_t s);

f2::BitMatrix bm_mul(const f2::BitMatrix &a, const f2::BitMatrix &b);

// Resolving one crossing of a diagram (for saddles). edge_map sends old edge
// ids to new ids, -1 when the edge was welded into a new free circle.
struct ResolvedDiagram {
  LinkDiagram d;
  std::vector<int> edge_map;
  int new_free = 0;  // free circles created by the smoothing
};
ResolvedDiagram resolve_crossing(const LinkDiagram &d, int c, int bit);

// A chain map between two total complexes with a constant bigrading shift.
struct ChainMap {
  TotalComplex src, tgt;
  std::vector<std::vector<std::pair<int, RingElement>>> f;  // per source gen
  int dgh = 0, dgq = 0;
  // nonzero cells of delta_tgt f - f delta_src (empty iff chain map)
  std::vector<D2Cell> commute_failures() const;
};

ChainMap birth_map(const LinkDiagram &d);
ChainMap death_map(const LinkDiagram &d);  // from the diagram with the extra circle
// Saddle at crossing c of the parent diagram: map C(D_0) -> C(D_1).
ChainMap saddle_map(const LinkDiagram &parent, int c);

}  // namespace khw

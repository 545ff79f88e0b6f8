#pragma once
// Bigraded complexes over the F2[H,W] family of rings, sparse Gaussian
// cancellation (zigzag updates), homology over F2 and over the PIDs F2[t].

#include <map>
#include <optional>
#include <vector>

#include "khw/f2/bitmatrix.hpp"
#include "khw/poly1.hpp"
#include "khw/ring.hpp"

namespace khw {

enum class Graded { Bigraded, HOnly, Ungraded };

struct Gen {
  uint32_t u = 0;  // resolution vertex (bitmask)
  uint32_t x = 0;  // circle monomial (bitmask)
  int gh = 0;
  int gq = 0;
};

struct Complex {
  Ring ring = Ring::F2HW;
  Graded graded = Graded::Bigraded;
  std::vector<Gen> gens;
  // differential entries per source generator, sorted by target index
  std::vector<std::vector<std::pair<int, RingElement>>> d;
  int qshift = 0;  // quantum-shift annotation {a}

  int size() const { return (int)gens.size(); }
  RingElement entry(int s, int t) const;
  void add_entry(int s, int t, const RingElement &e);  // xor into place
};

// Every nonzero entry must be homogeneous of bigrading (1,0) counting
// H: (0,-2), W: (-1,-2). Returns offending (src,tgt) pairs.
std::vector<std::pair<int, int>> check_homogeneous(const Complex &c);

struct D2Cell {
  int src, tgt;
  RingElement val;
};
std::vector<D2Cell> d_squared(const Complex &c);

// Cancel unit entries until none remain (pivot: minimal fill-in, then lowest
// (row, col)). Homotopy equivalent complex on a subset of the generators.
Complex gauss_reduce(const Complex &c);

// Homology over F2 (ring must be F2): full cancellation, counts of surviving
// generators. Keyed by (gh, gq), (gh, 0) or (0, 0) per grading mode.
struct BettiTable {
  std::map<std::pair<int, int>, int> counts;
  int total = 0;
};
BettiTable homology_f2(const Complex &c);

// Homology over F2[t] (ring F2H or F2W). Slices: gh for F2H; 2gh - gq for a
// bigraded F2W complex; a single slice for filtered F2W complexes (whose
// differential is not homogeneous in any t-invariant grading).
struct PidRow {
  int slice;
  int free_rank;
  std::vector<Poly1> torsion;  // nonunit invariant factors
};
std::vector<PidRow> homology_pid(const Complex &c);

// Localized homology over F2[H,H^-1,W]: cancel H^a units; if the reduced
// differential vanishes the module is free of the returned rank, otherwise
// the W-power torsion factors are reported.
struct LocHomology {
  int free_rank;
  std::vector<Poly1> torsion_w;
};
LocHomology homology_localized(const Complex &c);

// Dense F2 matrix of the differential of an F2 complex.
f2::BitMatrix to_bitmatrix(const Complex &c);

// Solve A x = b over F2 for sparse column data (any solution).
std::optional<std::vector<uint8_t>> solve_f2(const f2::BitMatrix &a,
                                             const std::vector<uint8_t> &b);

// Smith normal form diagonal of a dense F2[t] matrix (invariant factors,
// units included), plus the rank.
std::vector<Poly1> snf_diagonal(std::vector<std::vector<Poly1>> m);

}  // namespace khw

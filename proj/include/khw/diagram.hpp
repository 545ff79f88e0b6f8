#pragma once
// Planar link diagrams in PD notation.
//
// A crossing is stored as four edge ids in counterclockwise order starting
// from the incoming under-strand, X(a,b,c,d): the under-strand runs a -> c.
// This invariant is re-normalized after orientation flips by rotating tuples
// two steps. Smoothings: the 0-resolution joins the slot pairs (a,d),(b,c);
// the 1-resolution joins (a,b),(c,d).

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace khw {

struct DiagramError : std::runtime_error {
  explicit DiagramError(const std::string &m) : std::runtime_error(m) {}
};

enum class Move { R1Plus, R1Minus, R2, R3 };

struct LinkDiagram {
  // core data
  std::vector<std::array<int, 4>> xing;  // internal edge ids per slot
  int nedges = 0;
  int nfree = 0;                 // crossingless unknot components
  std::vector<int> deco;         // surgery-arc orientation bit per crossing
  int basepoint = -1;            // internal edge id, -1 = none
  int basepoint_free = -1;       // basepoint on a free circle instead

  // derived (filled by derive())
  std::vector<int> ext;          // external edge label per internal id
  std::vector<int> head_occ;     // occurrence (4*crossing+slot) the edge enters
  std::vector<int> tail_occ;     // occurrence the edge leaves
  std::vector<int> comp_of_edge;
  std::vector<int8_t> free_orient;  // orientation bit per free circle
  int ncomp = 0;                 // components including free circles
  std::vector<int8_t> sign;      // crossing signs
  int nplus = 0, nminus = 0;

  int n() const { return (int)xing.size(); }
  int writhe() const { return nplus - nminus; }

  // occurrence helpers
  int edge_at(int occ) const { return xing[occ >> 2][occ & 3]; }
  bool enters(int e, int occ) const { return head_occ[e] == occ; }

  // Validates everything and fills derived data. `flips` optionally reverses
  // the orientation of selected components (by component index).
  void derive(const std::vector<int> *flips = nullptr);
};

// Construction / parsing.
LinkDiagram from_pd(const std::vector<std::array<int, 4>> &pd, int unknots = 0,
                    const std::vector<int> &decorations = {}, int basepoint_ext = -1,
                    const std::vector<int> &orientations = {});
// Text form: "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]", "U", "U3", or a PD with
// trailing " U" tokens for split unknot components.
LinkDiagram parse_pd(const std::string &text, const std::vector<int> &decorations = {},
                     int basepoint_ext = -1, const std::vector<int> &orientations = {});

LinkDiagram mirror_diagram(const LinkDiagram &d);

// Local moves. `site`: R1: edge id (or -1 to kink a free circle); R2: two edge
// ids sharing a face; R3: an edge of a triangle face. New crossings get
// decoration bit `new_deco`.
LinkDiagram apply_move(const LinkDiagram &d, Move m, int site_a, int site_b = -1,
                       int new_deco = 0);

// Combinatorial-map faces of the underlying 4-valent graph. Each face is the
// orbit of occurrences under next = rotate(pair(occ)).
std::vector<std::vector<int>> diagram_faces(const LinkDiagram &d);

// Re-pick component orientations from scratch (rotating tuples at
// under-passes as needed) and re-derive; used after smoothing a crossing,
// which can reverse strands.
void renormalize_orientations(LinkDiagram &d);

// Torus link T(2,n) as the closure of the positive 2-braid.
LinkDiagram torus2(int n);

}  // namespace khw

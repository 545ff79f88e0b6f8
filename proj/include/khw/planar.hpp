#pragma once
// Complete resolutions and resolution configurations of a link diagram,
// carried as embedded data: each circle is a cyclic word of items, where an
// item is either an edge tag (which diagram edge the circle traverses) or an
// arc-end mark. A mark records the arc, whether it is the oriented arc's
// head, and the side (left/right of the traversal direction) on which the
// arc leaves the circle. Together with the per-circle words this captures the
// embedding of a connected configuration in S^2 up to orientation-preserving
// homeomorphism, which is what the contribution classifiers need.

#include <cstdint>
#include <vector>

#include "khw/diagram.hpp"

namespace khw {

struct Resolution {
  // circles as edge sets, sorted by minimal edge id; free circles (no edges)
  // are appended after the tagged ones.
  std::vector<std::vector<int>> circles;
  std::vector<int> circle_of_edge;
  int bp_circle = -1;  // circle through the basepoint, -1 when none
};

Resolution resolve(const LinkDiagram &d, uint32_t u);

struct CfgItem {
  int tag = -1;        // >= 0: edge id; -1: arc mark
  int arc = -1;        // arc id (= crossing id for diagram configurations)
  bool head = false;   // this mark is the arc's head
  bool left = false;   // arc leaves to the left of the traversal direction
  bool operator==(const CfgItem &) const = default;
};

struct Cfg {
  std::vector<std::vector<CfgItem>> circles;  // cyclic words
  std::vector<int> arcs;                      // arc ids present, sorted
  int index() const { return (int)arcs.size(); }

  // locate the two marks of an arc: (circle, position), end order = the
  // order the marks are found scanning circles
  struct ArcPos { int c0, p0, c1, p1; };
  ArcPos find_arc(int arc) const;
  int circle_with_tag(int edge) const;
};

// Oriented configuration D_u^v for u subset of v; starting circles in the
// same order as resolve(d, u). Arc orientation: decoration bit 0 points an
// arc from the strand through slot 0 toward the other strand.
Cfg configuration(const LinkDiagram &d, uint32_t u, uint32_t v);

// Surgery on every arc. Resulting circles are the ending circles (sorted by
// minimal edge tag, free circles last) and the marks the dual arcs, with
// their 90-degree-rotated orientations. Label bookkeeping is the caller's.
Cfg dual_config(const Cfg &c);

Cfg mirror_cfg(const Cfg &c);   // reverse all cyclic words, flip sides
Cfg reverse_cfg(const Cfg &c);  // flip all arc orientations

// Connected components of circles-plus-arcs. Each component lists circle
// indices; arcless singleton components are the passive circles.
struct Decomposition {
  std::vector<std::vector<int>> comp_circles;
  std::vector<std::vector<int>> comp_arcs;
  std::vector<int> comp_of_circle;
  std::vector<int> passive;  // circle indices with no marks
};
Decomposition decompose(const Cfg &c);

// Extract the sub-configuration on one component (circle order preserved).
Cfg subcfg(const Cfg &c, const std::vector<int> &circle_indices);

// Faces of the complete resolution (2-valent map). Returns face index per
// occurrence (4*crossing+slot entries; only slots on resolved strands used)
// and the number of faces; used for checkerboard colorings.
struct ResFaces {
  std::vector<int> face_of;  // indexed by occurrence
  int nfaces = 0;
};
ResFaces resolution_faces(const LinkDiagram &d, uint32_t u);

// Debug dump / parse of a labeled configuration (golden-file format):
// one line per circle with space-separated tokens "eN" or "aK{t|h}{l|r}",
// then "x: bits" and "y: bits" lines handled by the caller.
std::string cfg_dump(const Cfg &c);
Cfg cfg_parse(const std::string &text);

}  // namespace khw

#pragma once
// The four contribution functions on labeled oriented resolution
// configurations: Khovanov (k), Bar-Natan (b), the geometric one (d) with its
// five families A-E, and the forest rule (h). Classification is structural,
// computed from the cyclic-word invariants of the embedded configuration;
// no general isomorphism testing.

#include <cstdint>
#include <string>
#include <vector>

#include "khw/planar.hpp"

namespace khw {

enum class FamilyTag {
  MergeA, MergeB, SplitA, SplitB,  // k families (index 1)
  MergeC, SplitC,                  // b families (index 1)
  SzA, SzB, SzC, SzD, SzE, SzErev, // d families
  Forest,                          // h
  None
};
const char *family_name(FamilyTag t);

struct LabeledCfg {
  Cfg cfg;
  uint32_t x = 0;  // membership bit per starting circle
  uint32_t y = 0;  // membership bit per ending circle (dual_config order)
};

int eval_k(const LabeledCfg &lc);
int eval_b(const LabeledCfg &lc);
int eval_d(const LabeledCfg &lc);
int eval_h(const LabeledCfg &lc);

// Debug: the family of the active part under the given labels (None if the
// configuration contributes to nothing).
FamilyTag classify_labeled(const LabeledCfg &lc);

// Per-component classification used by the complex builder. Label masks are
// local to the component's circle order; ending circles in the component's
// dual order, with a representative edge tag each for global matching.
struct CompPatterns {
  bool tree = false;
  bool dualtree = false;
  struct DPat {
    uint32_t x, y;
    FamilyTag tag;
  };
  std::vector<DPat> dpats;
  int n_end = 0;
  std::vector<int> end_min_tag;  // per ending circle, INT_MAX if untagged
};
CompPatterns classify_component(const Cfg &comp);

}  // namespace khw

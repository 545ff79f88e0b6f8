#pragma once
// Shared helpers for the test suites: the bundled diagram corpus, random
// decorations, and configuration equality up to re-reading traversals.

#include <random>
#include <string>
#include <vector>

#include "khw/complex.hpp"
#include "khw/diagram.hpp"
#include "khw/planar.hpp"

namespace khw::test {

inline LinkDiagram trefoil() { return parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"); }
inline LinkDiagram fig8() {
  return parse_pd("PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]");
}
inline LinkDiagram hopf() { return parse_pd("PD[X(4,1,3,2),X(2,3,1,4)]"); }
inline LinkDiagram k5_1() {
  return parse_pd("PD[X(1,6,2,7),X(3,8,4,9),X(5,10,6,1),X(7,2,8,3),X(9,4,10,5)]");
}
inline LinkDiagram k5_2() {
  return parse_pd("PD[X(1,4,2,5),X(3,8,4,9),X(5,10,6,1),X(9,6,10,7),X(7,2,8,3)]");
}
inline LinkDiagram k6_1() {
  return parse_pd(
      "PD[X(1,4,2,5),X(7,10,8,11),X(3,9,4,8),X(9,3,10,2),X(5,12,6,1),X(11,6,12,7)]");
}
inline LinkDiagram k6_2() {
  return parse_pd(
      "PD[X(1,4,2,5),X(5,10,6,11),X(3,9,4,8),X(9,3,10,2),X(7,12,8,1),X(11,6,12,7)]");
}
inline LinkDiagram k6_3() {
  return parse_pd(
      "PD[X(4,2,5,1),X(8,4,9,3),X(12,9,1,10),X(10,5,11,6),X(6,11,7,12),X(2,8,3,7)]");
}
inline LinkDiagram unknot0() { return parse_pd("U"); }
inline LinkDiagram unknot1() { return parse_pd("PD[X(1,2,2,1)]"); }
inline LinkDiagram unlink(int k) { return parse_pd("U" + std::to_string(k)); }

inline LinkDiagram with_deco(const LinkDiagram &d0, uint32_t bits) {
  LinkDiagram d = d0;
  d.deco.assign(d0.n(), 0);
  for (int i = 0; i < d0.n(); ++i) d.deco[i] = (bits >> i) & 1;
  d.derive();
  return d;
}

inline LinkDiagram random_deco(const LinkDiagram &d0, std::mt19937 &rng) {
  return with_deco(d0, (uint32_t)rng());
}

// words equal up to rotation, or up to rotation after reversing the reading
// direction (which also flips every mark's side)
inline bool word_eq_gauge(const std::vector<CfgItem> &a, const std::vector<CfgItem> &b) {
  int n = (int)a.size();
  if ((int)b.size() != n) return false;
  if (n == 0) return true;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<CfgItem> bb = b;
    if (dir) {
      std::reverse(bb.begin(), bb.end());
      for (auto &it : bb)
        if (it.tag < 0) it.left = !it.left;
    }
    for (int r = 0; r < n; ++r) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = a[(r + i) % n] == bb[i];
      if (ok) return true;
    }
  }
  return false;
}

inline bool cfg_eq_gauge(const Cfg &a, const Cfg &b) {
  if (a.circles.size() != b.circles.size()) return false;
  std::vector<char> used(b.circles.size(), 0);
  for (auto &w : a.circles) {
    bool found = false;
    for (size_t j = 0; j < b.circles.size() && !found; ++j)
      if (!used[j] && word_eq_gauge(w, b.circles[j])) {
        used[j] = 1;
        found = true;
      }
    if (!found) return false;
  }
  return true;
}

// re-read a configuration with per-circle direction flips and rotations --
// the classifiers must not care (naturality / outer-face independence)
inline Cfg reroot(const Cfg &c, std::mt19937 &rng) {
  Cfg out = c;
  for (auto &w : out.circles) {
    if (w.empty()) continue;
    int r = (int)(rng() % w.size());
    std::rotate(w.begin(), w.begin() + r, w.end());
    if (rng() & 1) {
      std::reverse(w.begin(), w.end());
      for (auto &it : w)
        if (it.tag < 0) it.left = !it.left;
    }
  }
  return out;
}

}  // namespace khw::test

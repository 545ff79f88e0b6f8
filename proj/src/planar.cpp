#include "khw/planar.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <sstream>

namespace khw {

namespace {

// partner slot within a smoothing: 0-res joins (0,3),(1,2); 1-res (0,1),(2,3)
inline int partner(bool one_res, int s) { return one_res ? (s ^ 1) : (s ^ 3); }

struct Tracer {
  const LinkDiagram &d;
  uint32_t u, v;
  std::vector<int> visited;

  Tracer(const LinkDiagram &dd, uint32_t uu, uint32_t vv) : d(dd), u(uu), v(vv) {
    visited.assign(d.nedges, 0);
  }

  int other_occ(int e, int o) const {
    return d.head_occ[e] == o ? d.tail_occ[e] : d.head_occ[e];
  }

  std::vector<std::vector<CfgItem>> run() {
    std::vector<std::vector<CfgItem>> circles;
    for (int e0 = 0; e0 < d.nedges; ++e0) {
      if (visited[e0]) continue;
      std::vector<CfgItem> word;
      int e = e0, o = d.head_occ[e0];
      do {
        visited[e] = 1;
        word.push_back(CfgItem{e, -1, false, false});
        int c = o >> 2, s = o & 3;
        bool in_u = (u >> c) & 1;
        if (!in_u && ((v >> c) & 1)) {
          // passing a 0-resolved strand carrying the surgery arc.
          // end 0 = strand containing slot 0. sides: entering slot 0 -> R,
          // slot 3 -> L, slot 1 -> L, slot 2 -> R.
          int end = (s == 0 || s == 3) ? 0 : 1;
          bool head = d.deco[c] == 0 ? (end == 1) : (end == 0);
          bool left = (s == 3 || s == 1);
          word.push_back(CfgItem{-1, c, head, left});
        }
        int s2 = partner(in_u, s);
        e = d.xing[c][s2];
        o = other_occ(e, 4 * c + s2);
      } while (e != e0);
      circles.push_back(std::move(word));
    }
    for (int i = 0; i < d.nfree; ++i) circles.push_back({});
    return circles;
  }
};

int min_tag(const std::vector<CfgItem> &w) {
  int m = INT_MAX;
  for (auto &it : w)
    if (it.tag >= 0) m = std::min(m, it.tag);
  return m;
}

void sort_circles(std::vector<std::vector<CfgItem>> &circles) {
  std::stable_sort(circles.begin(), circles.end(),
                   [](const std::vector<CfgItem> &a, const std::vector<CfgItem> &b) {
                     return min_tag(a) < min_tag(b);
                   });
}

}  // namespace

Resolution resolve(const LinkDiagram &d, uint32_t u) {
  Tracer t(d, u, u);
  auto circles = t.run();
  sort_circles(circles);
  Resolution r;
  r.circle_of_edge.assign(d.nedges, -1);
  for (auto &w : circles) {
    std::vector<int> edges;
    for (auto &it : w)
      if (it.tag >= 0) edges.push_back(it.tag);
    for (int e : edges) r.circle_of_edge[e] = (int)r.circles.size();
    r.circles.push_back(std::move(edges));
  }
  if (d.basepoint >= 0) r.bp_circle = r.circle_of_edge[d.basepoint];
  else if (d.basepoint_free >= 0) {
    int ntagged = 0;
    for (auto &c : r.circles)
      if (!c.empty()) ++ntagged;
    r.bp_circle = ntagged + d.basepoint_free;
  }
  return r;
}

Cfg configuration(const LinkDiagram &d, uint32_t u, uint32_t v) {
  if ((u & ~v) != 0) throw DiagramError("configuration requires u subset of v");
  Tracer t(d, u, v);
  Cfg c;
  c.circles = t.run();
  sort_circles(c.circles);
  for (int i = 0; i < d.n(); ++i)
    if (((v >> i) & 1) && !((u >> i) & 1)) c.arcs.push_back(i);
  return c;
}

Cfg::ArcPos Cfg::find_arc(int arc) const {
  ArcPos a{-1, -1, -1, -1};
  for (int ci = 0; ci < (int)circles.size(); ++ci)
    for (int p = 0; p < (int)circles[ci].size(); ++p) {
      const CfgItem &it = circles[ci][p];
      if (it.tag < 0 && it.arc == arc) {
        if (a.c0 < 0) { a.c0 = ci; a.p0 = p; }
        else { a.c1 = ci; a.p1 = p; return a; }
      }
    }
  return a;
}

int Cfg::circle_with_tag(int edge) const {
  for (int ci = 0; ci < (int)circles.size(); ++ci)
    for (auto &it : circles[ci])
      if (it.tag == edge) return ci;
  return -1;
}

namespace {

struct WItem {
  CfgItem it;
  bool dual = false;
};

using WWord = std::vector<WItem>;

WWord rot_without(const WWord &w, int p) {
  WWord out;
  out.reserve(w.size() - 1);
  int n = (int)w.size();
  for (int i = 1; i < n; ++i) out.push_back(w[(p + i) % n]);
  return out;
}

WWord rev_flip(WWord w) {
  std::reverse(w.begin(), w.end());
  for (auto &x : w)
    if (x.it.tag < 0) x.it.left = !x.it.left;
  return w;
}

}  // namespace

Cfg dual_config(const Cfg &c) {
  std::vector<WWord> circles;
  for (auto &w : c.circles) {
    WWord ww;
    for (auto &it : w) ww.push_back(WItem{it, false});
    circles.push_back(std::move(ww));
  }
  for (int arc : c.arcs) {
    // locate the two (non-dual) marks of this arc
    int c0 = -1, p0 = -1, c1 = -1, p1 = -1;
    for (int ci = 0; ci < (int)circles.size() && c1 < 0; ++ci)
      for (int p = 0; p < (int)circles[ci].size(); ++p) {
        const WItem &x = circles[ci][p];
        if (!x.dual && x.it.tag < 0 && x.it.arc == arc) {
          if (c0 < 0) { c0 = ci; p0 = p; }
          else { c1 = ci; p1 = p; break; }
        }
      }
    if (c0 < 0 || c1 < 0) throw DiagramError("arc marks missing in configuration");
    bool sp = circles[c0][p0].it.left;   // side at first end
    bool p_is_head = circles[c0][p0].it.head;
    // dual mark orientation: with the arc running first->second end, the
    // dual head sits at the first inserted mark iff the first side is left.
    bool m1_head = sp ? !p_is_head : p_is_head;
    WItem m1{CfgItem{-1, arc, m1_head, !sp}, true};
    WItem m2{CfgItem{-1, arc, !m1_head, !sp}, true};
    if (c0 != c1) {
      bool sq = circles[c1][p1].it.left;
      WWord rx = rot_without(circles[c0], p0);
      WWord ry = rot_without(circles[c1], p1);
      if (sp != sq) ry = rev_flip(std::move(ry));
      WWord merged;
      merged.reserve(rx.size() + ry.size() + 2);
      for (auto &x : rx) merged.push_back(std::move(x));
      merged.push_back(m1);
      for (auto &y : ry) merged.push_back(std::move(y));
      merged.push_back(m2);
      circles[c0] = std::move(merged);
      circles.erase(circles.begin() + c1);
    } else {
      const WWord &w = circles[c0];
      int n = (int)w.size();
      if (w[p1].it.left != sp) throw DiagramError("self-arc with mismatched sides");
      WWord a, b;
      for (int i = (p1 + 1) % n; i != p0; i = (i + 1) % n) a.push_back(w[i]);
      a.push_back(m1);
      for (int i = (p0 + 1) % n; i != p1; i = (i + 1) % n) b.push_back(w[i]);
      b.push_back(m2);
      circles[c0] = std::move(a);
      circles.push_back(std::move(b));
    }
  }
  Cfg out;
  out.arcs = c.arcs;
  for (auto &w : circles) {
    std::vector<CfgItem> word;
    word.reserve(w.size());
    for (auto &x : w) word.push_back(x.it);
    out.circles.push_back(std::move(word));
  }
  sort_circles(out.circles);
  return out;
}

Cfg mirror_cfg(const Cfg &c) {
  // Reflection of S^2 keeps the mark order along each circle and swaps the
  // side every arc attaches from. (Reversing the word as well would merely
  // re-read the same traversal backwards.)
  Cfg out;
  out.arcs = c.arcs;
  for (auto w : c.circles) {
    for (auto &it : w)
      if (it.tag < 0) it.left = !it.left;
    out.circles.push_back(std::move(w));
  }
  return out;
}

Cfg reverse_cfg(const Cfg &c) {
  Cfg out = c;
  for (auto &w : out.circles)
    for (auto &it : w)
      if (it.tag < 0) it.head = !it.head;
  return out;
}

Decomposition decompose(const Cfg &c) {
  int n = (int)c.circles.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (int arc : c.arcs) {
    auto ap = c.find_arc(arc);
    if (ap.c1 < 0) throw DiagramError("configuration arc has missing end");
    parent[find(ap.c0)] = find(ap.c1);
  }
  Decomposition dec;
  dec.comp_of_circle.assign(n, -1);
  std::vector<int> root_comp(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (root_comp[r] < 0) {
      root_comp[r] = (int)dec.comp_circles.size();
      dec.comp_circles.push_back({});
      dec.comp_arcs.push_back({});
    }
    dec.comp_of_circle[i] = root_comp[r];
    dec.comp_circles[root_comp[r]].push_back(i);
    bool has_mark = false;
    for (auto &it : c.circles[i])
      if (it.tag < 0) has_mark = true;
    if (!has_mark) dec.passive.push_back(i);
  }
  for (int arc : c.arcs) {
    auto ap = c.find_arc(arc);
    dec.comp_arcs[dec.comp_of_circle[ap.c0]].push_back(arc);
  }
  return dec;
}

Cfg subcfg(const Cfg &c, const std::vector<int> &circle_indices) {
  Cfg out;
  for (int ci : circle_indices) out.circles.push_back(c.circles[ci]);
  std::vector<int> arcs;
  for (auto &w : out.circles)
    for (auto &it : w)
      if (it.tag < 0) arcs.push_back(it.arc);
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  out.arcs = std::move(arcs);
  return out;
}

ResFaces resolution_faces(const LinkDiagram &d, uint32_t u) {
  // Faces of the smoothed diagram: start from the 4-valent map's faces and
  // merge, at each crossing, the two corner regions the smoothing channel
  // connects (corners 0/2 for the 0-resolution, 1/3 for the 1-resolution).
  // corner(c,s) sits between slots s and s+1 and belongs to the face of the
  // occurrence (c, s+1).
  ResFaces rf;
  int nocc = 4 * d.n();
  rf.face_of.assign(std::max(nocc, 1), -1);
  auto other_occ = [&](int e, int o) {
    return d.head_occ[e] == o ? d.tail_occ[e] : d.head_occ[e];
  };
  int raw_faces = 0;
  for (int o0 = 0; o0 < nocc; ++o0) {
    if (rf.face_of[o0] >= 0) continue;
    int o = o0;
    do {
      rf.face_of[o] = raw_faces;
      int e = d.edge_at(o);
      int oo = other_occ(e, o);
      o = (oo & ~3) | ((oo + 1) & 3);
    } while (o != o0);
    raw_faces++;
  }
  std::vector<int> parent(std::max(raw_faces, 1));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (int c = 0; c < d.n(); ++c) {
    int s0 = ((u >> c) & 1) ? 1 : 0;  // channel corners s0 and s0 + 2
    int fa = rf.face_of[4 * c + ((s0 + 1) & 3)];
    int fb = rf.face_of[4 * c + ((s0 + 3) & 3)];
    parent[find(fa)] = find(fb);
  }
  std::vector<int> rename(std::max(raw_faces, 1), -1);
  for (int f = 0; f < raw_faces; ++f) {
    int r = find(f);
    if (rename[r] < 0) rename[r] = rf.nfaces++;
  }
  for (auto &f : rf.face_of)
    if (f >= 0) f = rename[find(f)];
  return rf;
}

std::string cfg_dump(const Cfg &c) {
  std::ostringstream os;
  for (auto &w : c.circles) {
    if (w.empty()) {
      os << "-\n";
      continue;
    }
    bool first = true;
    for (auto &it : w) {
      if (!first) os << ' ';
      first = false;
      if (it.tag >= 0) os << 'e' << it.tag;
      else os << 'a' << it.arc << (it.head ? 'h' : 't') << (it.left ? 'l' : 'r');
    }
    os << '\n';
  }
  return os.str();
}

Cfg cfg_parse(const std::string &text) {
  Cfg c;
  std::istringstream is(text);
  std::string line;
  std::vector<int> arcs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<CfgItem> word;
    if (line != "-") {
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) {
        if (tok[0] == 'e') {
          word.push_back(CfgItem{std::stoi(tok.substr(1)), -1, false, false});
        } else if (tok[0] == 'a') {
          size_t i = 1;
          while (i < tok.size() && isdigit((unsigned char)tok[i])) ++i;
          int arc = std::stoi(tok.substr(1, i - 1));
          if (i + 1 >= tok.size()) throw DiagramError("bad mark token: " + tok);
          bool head = tok[i] == 'h';
          bool left = tok[i + 1] == 'l';
          word.push_back(CfgItem{-1, arc, head, left});
          arcs.push_back(arc);
        } else {
          throw DiagramError("bad configuration token: " + tok);
        }
      }
    }
    c.circles.push_back(std::move(word));
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  c.arcs = std::move(arcs);
  return c;
}

}  // namespace khw

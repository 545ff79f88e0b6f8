#include "khw/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace khw {

namespace {

int rot_next(int occ) { return (occ & ~3) | ((occ + 1) & 3); }

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

void LinkDiagram::derive(const std::vector<int> *flips) {
  const int nx = n();
  if ((int)deco.size() != nx) {
    if (deco.empty()) deco.assign(nx, 0);
    else throw DiagramError("decoration list length does not match crossing count");
  }
  if ((int)ext.size() != nedges) {
    ext.resize(nedges);
    std::iota(ext.begin(), ext.end(), 0);
  }

  if (basepoint >= 0 && basepoint_free >= 0)
    throw DiagramError("basepoint cannot be on both an edge and a free circle");
  if (basepoint_free >= nfree)
    throw DiagramError("free-circle basepoint out of range");

  // occurrence table: each edge id must appear exactly twice
  std::vector<std::array<int, 2>> occ(nedges, {-1, -1});
  for (int c = 0; c < nx; ++c)
    for (int s = 0; s < 4; ++s) {
      int e = xing[c][s];
      if (e < 0 || e >= nedges) throw DiagramError("edge id out of range");
      if (occ[e][0] < 0) occ[e][0] = 4 * c + s;
      else if (occ[e][1] < 0) occ[e][1] = 4 * c + s;
      else throw DiagramError("edge " + std::to_string(ext[e]) + " appears more than twice");
    }
  for (int e = 0; e < nedges; ++e)
    if (occ[e][1] < 0)
      throw DiagramError("edge " + std::to_string(ext[e]) + " does not appear exactly twice");

  auto other_occ = [&](int e, int o) { return occ[e][0] == o ? occ[e][1] : occ[e][0]; };

  // Trace components; orient each so that under-strands run slot0 -> slot2.
  head_occ.assign(nedges, -1);
  tail_occ.assign(nedges, -1);
  comp_of_edge.assign(nedges, -1);
  ncomp = 0;
  std::vector<std::vector<int>> comp_edges;
  for (int e0 = 0; e0 < nedges; ++e0) {
    if (comp_of_edge[e0] >= 0) continue;
    std::vector<int> edges;
    int e = e0, h = occ[e0][0];
    do {
      comp_of_edge[e] = ncomp;
      head_occ[e] = h;
      tail_occ[e] = other_occ(e, h);
      edges.push_back(e);
      int leave = (h & ~3) | ((h + 2) & 3);  // partner slot of the strand
      e = edge_at(leave);
      h = other_occ(e, leave);
    } while (e != e0);
    // under-pass consistency: at slot0 the edge must enter, at slot2 leave
    int agree = 0, disagree = 0;
    for (int ee : edges) {
      for (int o : {occ[ee][0], occ[ee][1]}) {
        if ((o & 3) == 0) (enters(ee, o) ? agree : disagree)++;
        if ((o & 3) == 2) (!enters(ee, o) ? agree : disagree)++;
      }
    }
    if (agree && disagree)
      throw DiagramError("PD code has inconsistent strand orientations");
    if (disagree)
      for (int ee : edges) std::swap(head_occ[ee], tail_occ[ee]);
    comp_edges.push_back(std::move(edges));
    ++ncomp;
  }

  // Optional orientation flips. Reversing a component breaks the
  // under-in-slot0 convention at its under-passes; rotating those tuples two
  // steps restores it (occurrence slots move by s^2 there).
  free_orient.assign(nfree, 1);
  if (flips) {
    for (int ci : *flips) {
      if (ci < 0 || ci >= ncomp + nfree) throw DiagramError("orientation index out of range");
      if (ci >= ncomp) {
        free_orient[ci - ncomp] ^= 1;
        continue;
      }
      for (int ee : comp_edges[ci]) std::swap(head_occ[ee], tail_occ[ee]);
      for (int c = 0; c < nx; ++c) {
        if (comp_of_edge[xing[c][0]] != ci) continue;
        std::set<int> uniq(xing[c].begin(), xing[c].end());
        std::rotate(xing[c].begin(), xing[c].begin() + 2, xing[c].end());
        deco[c] ^= 1;  // the slot-0 strand swapped; keep the arrowhead fixed
        for (int e : uniq) {
          if ((head_occ[e] >> 2) == c) head_occ[e] ^= 2;
          if ((tail_occ[e] >> 2) == c) tail_occ[e] ^= 2;
        }
      }
    }
    for (int c = 0; c < nx; ++c) {
      int e0 = xing[c][0], e2 = xing[c][2];
      if (!enters(e0, 4 * c + 0) || enters(e2, 4 * c + 2))
        throw DiagramError("orientation flip produced inconsistent PD");
    }
  }

  // Signs: positive iff the over strand enters at slot 1.
  sign.assign(nx, 0);
  nplus = nminus = 0;
  for (int c = 0; c < nx; ++c) {
    int e1 = xing[c][1], e3 = xing[c][3];
    bool in1 = enters(e1, 4 * c + 1), in3 = enters(e3, 4 * c + 3);
    if (e1 == e3) { in1 = head_occ[e1] == 4 * c + 1; in3 = !in1; }
    if (in1 == in3) throw DiagramError("over-strand orientation inconsistent");
    sign[c] = in1 ? 1 : -1;
    (sign[c] > 0 ? nplus : nminus)++;
  }

  // Sphericality: V - E + F must equal 1 + #connected components of the map.
  if (nx > 0) {
    auto mate = [&](int e, int o) { return head_occ[e] == o ? tail_occ[e] : head_occ[e]; };
    std::vector<int> face_of(4 * nx, -1);
    int nfaces = 0;
    for (int o0 = 0; o0 < 4 * nx; ++o0) {
      if (face_of[o0] >= 0) continue;
      int o = o0;
      do {
        face_of[o] = nfaces;
        int e = edge_at(o);
        o = rot_next(mate(e, o));
      } while (o != o0);
      ++nfaces;
    }
    UF uf(nx);
    for (int e = 0; e < nedges; ++e) uf.unite(head_occ[e] >> 2, tail_occ[e] >> 2);
    int mapcomps = 0;
    for (int c = 0; c < nx; ++c)
      if (uf.find(c) == c) ++mapcomps;
    if (nx - nedges + nfaces != 1 + mapcomps)
      throw DiagramError("PD code is not spherical");
  }
  ncomp += nfree;
}

std::vector<std::vector<int>> diagram_faces(const LinkDiagram &d) {
  std::vector<std::vector<int>> faces;
  std::vector<int> seen(4 * d.n(), 0);
  for (int o0 = 0; o0 < 4 * d.n(); ++o0) {
    if (seen[o0]) continue;
    std::vector<int> f;
    int o = o0;
    do {
      seen[o] = 1;
      f.push_back(o);
      int e = d.edge_at(o);
      int oo = d.head_occ[e] == o ? d.tail_occ[e] : d.head_occ[e];
      o = rot_next(oo);
    } while (o != o0);
    faces.push_back(std::move(f));
  }
  return faces;
}

LinkDiagram from_pd(const std::vector<std::array<int, 4>> &pd, int unknots,
                    const std::vector<int> &decorations, int basepoint_ext,
                    const std::vector<int> &orientations) {
  LinkDiagram d;
  d.nfree = unknots;
  std::map<int, int> remap;
  for (auto &t : pd)
    for (int v : t)
      if (!remap.count(v)) remap.emplace(v, 0);
  int id = 0;
  for (auto &kv : remap) kv.second = id++;
  d.nedges = id;
  d.ext.resize(id);
  for (auto &kv : remap) d.ext[kv.second] = kv.first;
  for (auto &t : pd)
    d.xing.push_back({remap[t[0]], remap[t[1]], remap[t[2]], remap[t[3]]});
  if (!decorations.empty()) {
    if ((int)decorations.size() != (int)pd.size())
      throw DiagramError("decoration list length does not match crossing count");
    d.deco = decorations;
  }
  if (basepoint_ext >= 0) {
    auto it = remap.find(basepoint_ext);
    if (it == remap.end()) throw DiagramError("basepoint edge does not exist");
    d.basepoint = it->second;
  }
  std::vector<int> flips;
  for (size_t i = 0; i < orientations.size(); ++i)
    if (orientations[i] < 0) flips.push_back((int)i);
  d.derive(flips.empty() ? nullptr : &flips);
  if (!orientations.empty() && (int)orientations.size() != d.ncomp)
    throw DiagramError("orientation list length does not match component count");
  return d;
}

LinkDiagram parse_pd(const std::string &text, const std::vector<int> &decorations,
                     int basepoint_ext, const std::vector<int> &orientations) {
  std::vector<std::array<int, 4>> pd;
  int unknots = 0;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (isspace((unsigned char)text[i]) || text[i] == '+')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] == 'U' || text[i] == 'u') {
      ++i;
      size_t j = i;
      while (j < text.size() && isdigit((unsigned char)text[j])) ++j;
      unknots += j > i ? std::stoi(text.substr(i, j - i)) : 1;
      i = j;
      skip_ws();
      continue;
    }
    if (text.compare(i, 3, "PD[") == 0) {
      i += 3;
      while (i < text.size() && text[i] != ']') {
        skip_ws();
        if (text[i] == ',') { ++i; continue; }
        if (text[i] != 'X')
          throw DiagramError("malformed PD text near '" + text.substr(i, 8) + "'");
        ++i;
        if (i >= text.size() || (text[i] != '(' && text[i] != '['))
          throw DiagramError("malformed PD crossing");
        ++i;
        std::array<int, 4> t{};
        for (int k = 0; k < 4; ++k) {
          size_t j = i;
          while (j < text.size() && (isdigit((unsigned char)text[j]) || text[j] == '-')) ++j;
          if (j == i) throw DiagramError("malformed PD crossing entry");
          t[k] = std::stoi(text.substr(i, j - i));
          i = j;
          while (i < text.size() && (text[i] == ',' || isspace((unsigned char)text[i]))) ++i;
        }
        if (i >= text.size() || (text[i] != ')' && text[i] != ']'))
          throw DiagramError("malformed PD crossing close");
        ++i;
        pd.push_back(t);
        skip_ws();
      }
      if (i >= text.size()) throw DiagramError("unterminated PD[...]");
      ++i;
      skip_ws();
      continue;
    }
    throw DiagramError("unrecognized diagram token near '" + text.substr(i, 8) + "'");
  }
  if (pd.empty() && unknots == 0) throw DiagramError("empty diagram text");
  return from_pd(pd, unknots, decorations, basepoint_ext, orientations);
}

LinkDiagram mirror_diagram(const LinkDiagram &d) {
  LinkDiagram m;
  m.nedges = d.nedges;
  m.nfree = d.nfree;
  m.deco = d.deco;
  m.basepoint = d.basepoint;
  m.basepoint_free = d.basepoint_free;
  m.ext = d.ext;
  for (int c = 0; c < d.n(); ++c) {
    // over and under swap; the new under-in slot is the old over-in slot
    int e1 = d.xing[c][1];
    bool in1 = d.enters(e1, 4 * c + 1);
    if (d.xing[c][1] == d.xing[c][3]) in1 = d.head_occ[e1] == 4 * c + 1;
    int s = in1 ? 1 : 3;
    std::array<int, 4> t;
    for (int k = 0; k < 4; ++k) t[k] = d.xing[c][(s + k) & 3];
    m.xing.push_back(t);
  }
  m.derive();
  return m;
}

void renormalize_orientations(LinkDiagram &d) {
  const int nx = d.n();
  std::vector<std::array<int, 2>> occ(d.nedges, {-1, -1});
  for (int c = 0; c < nx; ++c)
    for (int s = 0; s < 4; ++s) {
      int e = d.xing[c][s];
      if (occ[e][0] < 0) occ[e][0] = 4 * c + s;
      else occ[e][1] = 4 * c + s;
    }
  auto other = [&](int e, int o) { return occ[e][0] == o ? occ[e][1] : occ[e][0]; };
  // trace strands, assign a direction, and rotate crossings whose under
  // strand runs against the slot-0 convention
  std::vector<int> head(d.nedges, -1);
  std::vector<char> seen(d.nedges, 0);
  for (int e0 = 0; e0 < d.nedges; ++e0) {
    if (seen[e0]) continue;
    int e = e0, h = occ[e0][0];
    do {
      seen[e] = 1;
      head[e] = h;
      int leave = (h & ~3) | ((h + 2) & 3);
      e = d.xing[leave >> 2][leave & 3];
      h = other(e, leave);
    } while (e != e0);
  }
  for (int c = 0; c < nx; ++c) {
    int e0 = d.xing[c][0];
    if (head[e0] != 4 * c + 0) {
      std::rotate(d.xing[c].begin(), d.xing[c].begin() + 2, d.xing[c].end());
      if (!d.deco.empty()) d.deco[c] ^= 1;  // keep the geometric arrowhead
      // occurrences at this crossing moved by two slots
      std::set<int> uniq(d.xing[c].begin(), d.xing[c].end());
      for (int e : uniq) {
        for (int k = 0; k < 2; ++k)
          if ((occ[e][k] >> 2) == c) occ[e][k] ^= 2;
        if ((head[e] >> 2) == c) head[e] ^= 2;
      }
    }
  }
  d.derive();
}

LinkDiagram torus2(int n) {
  // closure of the positive 2-braid sigma_1^n; arcs l_k = 2k+1, r_k = 2k+2
  std::vector<std::array<int, 4>> pd;
  auto wrap = [&](int v) { return (v - 1) % (2 * n) + 1; };
  for (int k = 1; k <= n; ++k)
    pd.push_back({2 * k - 1, 2 * k, wrap(2 * k + 2), wrap(2 * k + 1)});
  return from_pd(pd);
}

namespace {

LinkDiagram rebuilt(std::vector<std::array<int, 4>> xing, int nedges, int nfree,
                    std::vector<int> deco, int basepoint, std::vector<int> ext,
                    int basepoint_free = -1) {
  LinkDiagram d;
  d.xing = std::move(xing);
  d.nedges = nedges;
  d.nfree = nfree;
  d.deco = std::move(deco);
  d.basepoint = basepoint;
  d.basepoint_free = basepoint_free;
  d.ext = std::move(ext);
  d.derive();
  return d;
}

LinkDiagram r1(const LinkDiagram &d, int edge, bool positive, int new_deco) {
  auto xing = d.xing;
  auto deco = d.deco;
  deco.push_back(new_deco);
  int nedges = d.nedges;
  auto ext = d.ext;
  auto fresh = [&] {
    int m = 0;
    for (int v : ext) m = std::max(m, v);
    ext.push_back(m + 1);
    return nedges++;
  };
  if (edge < 0) {
    if (d.nfree == 0) throw DiagramError("no free circle to kink");
    if (d.basepoint_free == d.nfree - 1)
      throw DiagramError("move would cross the basepoint");
    int e1 = fresh(), e2 = fresh();
    if (positive) xing.push_back({e1, e2, e2, e1});
    else xing.push_back({e1, e1, e2, e2});
    return rebuilt(std::move(xing), nedges, d.nfree - 1, std::move(deco), d.basepoint,
                   std::move(ext), d.basepoint_free);
  }
  if (edge >= d.nedges) throw DiagramError("R1 site edge does not exist");
  if (edge == d.basepoint) throw DiagramError("move would cross the basepoint");
  int loop = fresh(), tail = fresh();
  int ho = d.head_occ[edge];
  xing[ho >> 2][ho & 3] = tail;
  if (positive) xing.push_back({edge, loop, loop, tail});
  else xing.push_back({edge, tail, loop, loop});
  return rebuilt(std::move(xing), nedges, d.nfree, std::move(deco), d.basepoint,
                 std::move(ext), d.basepoint_free);
}

LinkDiagram r2(const LinkDiagram &d, int ea, int eb, int new_deco) {
  if (ea < 0 || eb < 0 || ea >= d.nedges || eb >= d.nedges || ea == eb)
    throw DiagramError("R2 needs two distinct edges");
  if (ea == d.basepoint || eb == d.basepoint)
    throw DiagramError("move would cross the basepoint");
  bool share_face = false;
  for (auto &f : diagram_faces(d)) {
    bool ha = false, hb = false;
    for (int o : f) {
      if (d.edge_at(o) == ea) ha = true;
      if (d.edge_at(o) == eb) hb = true;
    }
    if (ha && hb) { share_face = true; break; }
  }
  if (d.n() > 0 && !share_face)
    throw DiagramError("edges do not share a face; R2 not possible");

  // Strand A (= ea, split into ea -> M -> A2 along its direction) is pushed
  // over strand B (= eb, split into eb -> B2 -> B3). Four local geometries
  // are possible (A meets B's first or second new crossing first, finger on
  // either side of B); the sphericality check selects the realizable one.
  for (int variant = 0; variant < 4; ++variant) {
    auto xing = d.xing;
    auto deco = d.deco;
    deco.push_back(new_deco);
    deco.push_back(new_deco);
    int nedges = d.nedges;
    auto ext = d.ext;
    auto fresh = [&] {
      int m = 0;
      for (int v : ext) m = std::max(m, v);
      ext.push_back(m + 1);
      return nedges++;
    };
    int M = fresh(), A2 = fresh(), B2 = fresh(), B3 = fresh();
    int hoA = d.head_occ[ea], hoB = d.head_occ[eb];
    xing[hoA >> 2][hoA & 3] = A2;
    xing[hoB >> 2][hoB & 3] = B3;
    // cL: B runs eb -> B2, cR: B runs B2 -> B3; A is over at both.
    std::array<int, 4> tL, tR;
    switch (variant) {
      case 0:  // A enters at cR, face on B's left
        tL = {eb, M, B2, A2};
        tR = {B2, M, B3, ea};
        break;
      case 1:  // A enters at cL, face on B's left
        tL = {eb, M, B2, ea};
        tR = {B2, M, B3, A2};
        break;
      case 2:  // mirrored placements (face on B's right)
        tL = {eb, A2, B2, M};
        tR = {B2, ea, B3, M};
        break;
      default:
        tL = {eb, ea, B2, M};
        tR = {B2, A2, B3, M};
        break;
    }
    xing.push_back(tL);
    xing.push_back(tR);
    try {
      LinkDiagram out = rebuilt(std::move(xing), nedges, d.nfree, std::move(deco),
                                d.basepoint, std::move(ext), d.basepoint_free);
      if (out.ncomp != d.ncomp || out.writhe() != d.writhe()) continue;
      return out;
    } catch (const DiagramError &) {
      continue;
    }
  }
  throw DiagramError("R2 construction failed at this site");
}

LinkDiagram r3(const LinkDiagram &d, int site_edge) {
  if (site_edge < 0 || site_edge >= d.nedges) throw DiagramError("R3 site edge does not exist");
  for (auto &f : diagram_faces(d)) {
    if (f.size() != 3) continue;
    bool has = false;
    for (int o : f)
      if (d.edge_at(o) == site_edge) has = true;
    if (!has) continue;
    int e[3], cr[3];
    for (int k = 0; k < 3; ++k) {
      e[k] = d.edge_at(f[k]);
      cr[k] = f[k] >> 2;
    }
    if (e[0] == e[1] || e[1] == e[2] || e[0] == e[2]) continue;
    if (cr[0] == cr[1] || cr[1] == cr[2] || cr[0] == cr[2]) continue;
    // strand k is the strand of triangle edge e[k]; over iff its slot is odd
    int over_count[3];
    for (int k = 0; k < 3; ++k)
      over_count[k] = ((d.head_occ[e[k]] & 1) ? 1 : 0) + ((d.tail_occ[e[k]] & 1) ? 1 : 0);
    {
      int cnt[3] = {0, 0, 0};
      for (int k = 0; k < 3; ++k)
        cnt[over_count[k]]++;
      if (!(cnt[0] == 1 && cnt[1] == 1 && cnt[2] == 1)) continue;  // not braid-like
    }
    if (d.basepoint == e[0] || d.basepoint == e[1] || d.basepoint == e[2])
      throw DiagramError("move would cross the basepoint");
    // Each strand's two triangle crossings swap their order along the strand.
    // Locally each crossing keeps its compass layout; only edge ids move:
    // at the old first crossing (u in, mid out) -> (mid in, w out), and at
    // the old second (mid in, w out) -> (u in, mid out).
    auto xing = d.xing;
    for (int k = 0; k < 3; ++k) {
      int mid = e[k];
      int o1 = d.tail_occ[mid], o2 = d.head_occ[mid];
      int c1 = o1 >> 2, s_out1 = o1 & 3, s_in1 = s_out1 ^ 2;
      int c2 = o2 >> 2, s_in2 = o2 & 3, s_out2 = s_in2 ^ 2;
      int u = d.xing[c1][s_in1];
      int w = d.xing[c2][s_out2];
      xing[c1][s_in1] = mid;
      xing[c1][s_out1] = w;
      xing[c2][s_in2] = u;
      xing[c2][s_out2] = mid;
    }
    LinkDiagram out = rebuilt(std::move(xing), d.nedges, d.nfree, d.deco, d.basepoint, d.ext,
                              d.basepoint_free);
    if (out.ncomp != d.ncomp || out.writhe() != d.writhe())
      throw DiagramError("R3 construction failed at this site");
    return out;
  }
  throw DiagramError("site is not on a triangle face supporting R3");
}

}  // namespace

LinkDiagram apply_move(const LinkDiagram &d, Move m, int site_a, int site_b, int new_deco) {
  switch (m) {
    case Move::R1Plus: return r1(d, site_a, true, new_deco);
    case Move::R1Minus: return r1(d, site_a, false, new_deco);
    case Move::R2: return r2(d, site_a, site_b, new_deco);
    case Move::R3: return r3(d, site_a);
  }
  throw DiagramError("unknown move");
}

}  // namespace khw

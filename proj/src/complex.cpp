#include "khw/complex.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <climits>
#include <cstdlib>
#include <functional>
#include <map>
#include <thread>

namespace khw {

namespace {

int env_threads() {
  if (const char *e = std::getenv("KHW_THREADS")) {
    int v = std::atoi(e);
    if (v >= 1) return v;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? (int)h : 1;
}

void parallel_for(int n, const std::function<void(int)> &fn) {
  int nt = std::min(env_threads(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto &th : pool) th.join();
}

}  // namespace

TotalComplex build_total(const LinkDiagram &d) {
  const int n = d.n();
  if (n > 20) throw DiagramError("diagram too large for full cube");
  const uint32_t full = n == 0 ? 0 : ((uint32_t(1) << n) - 1);

  TotalComplex tc;
  tc.n = n;
  tc.cx.ring = Ring::F2HW;
  tc.cx.graded = Graded::Bigraded;

  std::vector<Resolution> res(uint64_t(1) << n);
  tc.offset.resize((size_t(1) << n) + 1);
  tc.ncirc.resize(size_t(1) << n);
  tc.bp_circle.resize(size_t(1) << n);
  long long total = 0;
  for (uint32_t u = 0; u <= full; ++u) {
    res[u] = resolve(d, u);
    tc.ncirc[u] = (int)res[u].circles.size();
    tc.bp_circle[u] = res[u].bp_circle;
    tc.offset[u] = (int)total;
    if (tc.ncirc[u] > 30) throw DiagramError("too many circles in a resolution");
    total += (long long)1 << tc.ncirc[u];
    if (total > (1 << 28)) throw DiagramError("complex too large");
    if (n == 0) break;
  }
  tc.offset[size_t(full) + 1] = (int)total;

  tc.cx.gens.resize(total);
  tc.cx.d.assign(total, {});
  for (uint32_t u = 0; u <= full; ++u) {
    int nc = tc.ncirc[u];
    int gh = -d.nminus + __builtin_popcount(u);
    int base_q = d.nplus - 2 * d.nminus + __builtin_popcount(u) + nc;
    for (uint32_t x = 0; x < (uint32_t(1) << nc); ++x) {
      Gen &g = tc.cx.gens[tc.offset[u] + x];
      g.u = u;
      g.x = x;
      g.gh = gh;
      g.gq = base_q - 2 * __builtin_popcount(x);
    }
    if (n == 0) break;
  }
  if (n == 0) return tc;

  // one task per vertex u: all differentials out of u
  parallel_for((int)full + 1, [&](int ui) {
    uint32_t u = (uint32_t)ui;
    uint32_t comp = full & ~u;
    const Resolution &ru = res[u];
    int ntag_u = 0;
    for (auto &c : ru.circles)
      if (!c.empty()) ++ntag_u;
    for (uint32_t w = comp; w; w = (w - 1) & comp) {
      uint32_t v = u | w;
      int idx = __builtin_popcount(w);
      const Resolution &rv = res[v];
      int ntag_v = 0;
      for (auto &c : rv.circles)
        if (!c.empty()) ++ntag_v;

      Cfg cfg = configuration(d, u, v);
      Decomposition dec = decompose(cfg);

      // global circle index of an ending circle by representative edge
      auto end_global = [&](int tag) { return rv.circle_of_edge[tag]; };

      // passive circles: start index -> end index
      std::vector<std::pair<int, int>> passive;  // (start bit, end bit)
      for (int ci : dec.passive) {
        int mt = INT_MAX;
        for (auto &it : cfg.circles[ci])
          if (it.tag >= 0) mt = std::min(mt, it.tag);
        if (mt == INT_MAX) {
          // free circle: position among untagged equals on both sides
          int j = ci - ntag_u;
          passive.push_back({ci, ntag_v + j});
        } else {
          passive.push_back({ci, end_global(mt)});
        }
      }

      std::vector<int> active;
      for (int k = 0; k < (int)dec.comp_circles.size(); ++k)
        if (!dec.comp_arcs[k].empty()) active.push_back(k);

      struct Opt {
        uint32_t x, y;
      };
      // per active component: its global-circle translation and patterns
      std::vector<std::vector<Opt>> h_opts(active.size());
      std::vector<std::vector<Opt>> d_opts(active.size());
      bool h_possible = true;
      for (size_t a = 0; a < active.size(); ++a) {
        int k = active[a];
        Cfg sc = subcfg(cfg, dec.comp_circles[k]);
        CompPatterns cp = classify_component(sc);
        uint32_t allx = 0;
        for (int ci : dec.comp_circles[k]) allx |= uint32_t(1) << ci;
        auto y_global = [&](uint32_t ylocal) {
          uint32_t y = 0;
          for (int j = 0; j < cp.n_end; ++j)
            if ((ylocal >> j) & 1) {
              assert(cp.end_min_tag[j] != INT_MAX);
              y |= uint32_t(1) << end_global(cp.end_min_tag[j]);
            }
          return y;
        };
        if (cp.tree) h_opts[a].push_back({allx, y_global(1u << 0)});
        if (cp.dualtree) h_opts[a].push_back({0, 0});
        if (h_opts[a].empty()) h_possible = false;
        for (auto &p : cp.dpats) {
          uint32_t gx = 0;
          for (int j = 0; j < (int)dec.comp_circles[k].size(); ++j)
            if ((p.x >> j) & 1) gx |= uint32_t(1) << dec.comp_circles[k][j];
          d_opts[a].push_back({gx, y_global(p.y)});
        }
      }

      RingElement wpow = RingElement::monomial(0, idx - 1);
      RingElement hwpow = RingElement::monomial(1, idx - 1);

      auto emit = [&](uint32_t xa, uint32_t ya, const RingElement &coeff) {
        // passive circles free to match
        int np = (int)passive.size();
        for (uint32_t pm = 0; pm < (uint32_t(1) << np); ++pm) {
          uint32_t x = xa, y = ya;
          for (int i = 0; i < np; ++i)
            if ((pm >> i) & 1) {
              x |= uint32_t(1) << passive[i].first;
              y |= uint32_t(1) << passive[i].second;
            }
          tc.cx.add_entry(tc.offset[u] + x, tc.offset[v] + y, coeff);
        }
      };

      // c_d: exactly one active component in a family
      if (active.size() == 1) {
        for (auto &o : d_opts[0]) emit(o.x, o.y, wpow);
      }
      // c_h: every active component a tree or dual tree
      if (h_possible && !active.empty()) {
        std::vector<size_t> pick(active.size(), 0);
        for (;;) {
          uint32_t xa = 0, ya = 0;
          for (size_t a = 0; a < active.size(); ++a) {
            xa |= h_opts[a][pick[a]].x;
            ya |= h_opts[a][pick[a]].y;
          }
          emit(xa, ya, hwpow);
          size_t a = 0;
          while (a < active.size() && ++pick[a] == h_opts[a].size()) pick[a++] = 0;
          if (a == active.size()) break;
        }
      }
    }
  });
  return tc;
}

Complex specialize(const Complex &c, HSpec h, WSpec w) {
  Complex out;
  out.qshift = c.qshift;
  if (w == WSpec::One) out.graded = Graded::Ungraded;
  else if (h == HSpec::One) out.graded = Graded::HOnly;
  else out.graded = Graded::Bigraded;
  bool hv = h == HSpec::Keep || h == HSpec::Invert;
  bool wv = w == WSpec::Keep;
  if (h == HSpec::Invert) out.ring = Ring::F2HlocW;
  else if (hv && wv) out.ring = Ring::F2HW;
  else if (hv) out.ring = Ring::F2H;
  else if (wv) out.ring = Ring::F2W;
  else out.ring = Ring::F2;
  out.gens = c.gens;
  out.d.resize(c.d.size());
  for (int s = 0; s < c.size(); ++s)
    for (auto &p : c.d[s]) {
      RingElement e = p.second;
      if (h == HSpec::Zero) e = e.with_h0();
      else if (h == HSpec::One) e = e.with_h1();
      if (w == WSpec::Zero) e = e.with_w0();
      else if (w == WSpec::One) e = e.with_w1();
      if (!e.is_zero()) out.d[s].push_back({p.first, e});
    }
  return out;
}

ReducedPair reduced_split(const TotalComplex &tc, const LinkDiagram &d) {
  if (d.basepoint < 0 && d.basepoint_free < 0)
    throw DiagramError("reduced complexes need a basepoint");
  int nb = tc.cx.size();
  std::vector<int> side(nb);  // 1 = minus (basepoint circle present)
  for (int i = 0; i < nb; ++i) {
    const Gen &g = tc.cx.gens[i];
    int bc = tc.bp_circle[g.u];
    side[i] = (g.x >> bc) & 1;
  }
  ReducedPair rp;
  for (int want = 1; want >= 0; --want) {
    Complex cx;
    cx.ring = tc.cx.ring;
    cx.graded = tc.cx.graded;
    std::vector<int> remap(nb, -1);
    for (int i = 0; i < nb; ++i)
      if (side[i] == want) {
        remap[i] = cx.size();
        Gen g = tc.cx.gens[i];
        g.gq += want ? 1 : -1;
        cx.gens.push_back(g);
      }
    cx.d.resize(cx.gens.size());
    for (int i = 0; i < nb; ++i) {
      if (side[i] != want) continue;
      for (auto &p : tc.cx.d[i]) {
        if (side[p.first] != want) {
          if (want == 1)
            throw DiagramError("minus span is not a subcomplex");  // filtration rule broken
          continue;  // quotient projection
        }
        cx.d[remap[i]].push_back({remap[p.first], p.second});
      }
    }
    (want ? rp.minus : rp.plus) = std::move(cx);
  }
  return rp;
}

f2::BitMatrix h_block(const TotalComplex &tc, const LinkDiagram &d, uint32_t s) {
  int nb = tc.cx.size();
  f2::BitMatrix m(nb, nb);
  int i = __builtin_popcount(s);
  for (int src = 0; src < nb; ++src) {
    uint32_t u = tc.cx.gens[src].u;
    if (u & s) continue;
    for (auto &p : tc.cx.d[src]) {
      if (tc.cx.gens[p.first].u != (u | s)) continue;
      for (auto &mono : p.second.terms())
        if (mono.h == 1 && mono.w == i - 1) m.set(p.first, src, true);
    }
  }
  (void)d;
  return m;
}

f2::BitMatrix bm_mul(const f2::BitMatrix &a, const f2::BitMatrix &b) {
  // (a*b)[i][j] = sum_k a[i][k] b[k][j]; rows of the result built by xoring
  // rows of b for the set bits of a's rows
  f2::BitMatrix out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k)
      if (a.get(i, k)) f2::xor_rows(out.row(i), b.row(k), out.words());
  return out;
}

ResolvedDiagram resolve_crossing(const LinkDiagram &d, int c, int bit) {
  if (c < 0 || c >= d.n()) throw DiagramError("no such crossing");
  ResolvedDiagram out;
  int ne = d.nedges;
  std::vector<int> parent(ne);
  for (int i = 0; i < ne; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  auto weld = [&](int a, int b) { parent[find(a)] = find(b); };
  if (bit == 0) {
    weld(d.xing[c][0], d.xing[c][3]);
    weld(d.xing[c][1], d.xing[c][2]);
  } else {
    weld(d.xing[c][0], d.xing[c][1]);
    weld(d.xing[c][2], d.xing[c][3]);
  }
  // classes with an occurrence away from crossing c survive as edges
  std::vector<char> survives(ne, 0);
  for (int cc = 0; cc < d.n(); ++cc) {
    if (cc == c) continue;
    for (int s = 0; s < 4; ++s) survives[find(d.xing[cc][s])] = 1;
  }
  out.edge_map.assign(ne, -1);
  std::vector<int> newid(ne, -1);
  LinkDiagram nd;
  for (int e = 0; e < ne; ++e) {
    int r = find(e);
    if (!survives[r]) continue;
    if (newid[r] < 0) {
      newid[r] = nd.nedges++;
      nd.ext.push_back(d.ext[e]);
    }
    out.edge_map[e] = newid[r];
  }
  // dead classes become free circles
  {
    std::vector<char> seen(ne, 0);
    for (int e = 0; e < ne; ++e) {
      int r = find(e);
      if (!survives[r] && !seen[r]) {
        seen[r] = 1;
        out.new_free++;
      }
    }
  }
  nd.nfree = d.nfree + out.new_free;
  for (int cc = 0; cc < d.n(); ++cc) {
    if (cc == c) continue;
    std::array<int, 4> t;
    for (int s = 0; s < 4; ++s) t[s] = out.edge_map[d.xing[cc][s]];
    nd.xing.push_back(t);
    nd.deco.push_back(d.deco[cc]);
  }
  if (d.basepoint >= 0) nd.basepoint = out.edge_map[d.basepoint];  // -1 if welded away
  nd.basepoint_free = d.basepoint_free;
  renormalize_orientations(nd);
  out.d = std::move(nd);
  return out;
}

std::vector<D2Cell> ChainMap::commute_failures() const {
  std::vector<D2Cell> bad;
  for (int s = 0; s < src.cx.size(); ++s) {
    std::map<int, RingElement> acc;
    auto add = [&](int t, const RingElement &e) {
      if (e.is_zero()) return;
      auto it = acc.find(t);
      if (it == acc.end()) acc.emplace(t, e);
      else {
        it->second += e;
        if (it->second.is_zero()) acc.erase(it);
      }
    };
    for (auto &p : f[s])
      for (auto &q : tgt.cx.d[p.first]) add(q.first, p.second * q.second);
    for (auto &p : src.cx.d[s])
      for (auto &q : f[p.first]) add(q.first, p.second * q.second);
    for (auto &kv : acc) bad.push_back({s, kv.first, kv.second});
  }
  return bad;
}

namespace {

// circle-index translation between resolve(parent, u) and the resolution of
// the smoothed diagram at the matching vertex.
std::vector<int> circle_translation(const Resolution &old_res, const Resolution &new_res,
                                    const std::vector<int> &edge_map) {
  int n_old = (int)old_res.circles.size();
  std::vector<int> tr(n_old, -1);
  // count tagged circles on each side
  int old_tagged = 0, new_tagged = 0;
  for (auto &cc : old_res.circles)
    if (!cc.empty()) ++old_tagged;
  for (auto &cc : new_res.circles)
    if (!cc.empty()) ++new_tagged;
  // old frees keep their slots; circles welded away by the smoothing take
  // the new free slots after them, in discovery order
  int next_new_free = new_tagged + (n_old - old_tagged);
  int extra = 0;
  for (int i = 0; i < n_old; ++i) {
    if (old_res.circles[i].empty()) {
      tr[i] = new_tagged + (i - old_tagged);
      continue;
    }
    int found = -1;
    for (int e : old_res.circles[i])
      if (edge_map[e] >= 0) { found = new_res.circle_of_edge[edge_map[e]]; break; }
    if (found < 0) {
      // the circle was welded into a fresh free circle
      found = next_new_free + extra;
      ++extra;
    }
    tr[i] = found;
  }
  return tr;
}

}  // namespace

ChainMap birth_map(const LinkDiagram &d) {
  ChainMap cm;
  cm.src = build_total(d);
  LinkDiagram dp = d;
  dp.nfree += 1;
  dp.derive();
  cm.tgt = build_total(dp);
  cm.f.assign(cm.src.cx.size(), {});
  // the new circle is appended at the end of every resolution's circle list
  for (int g = 0; g < cm.src.cx.size(); ++g) {
    const Gen &gen = cm.src.cx.gens[g];
    cm.f[g].push_back({cm.tgt.gen_index(gen.u, gen.x), RingElement::one()});
  }
  cm.dgh = 0;
  cm.dgq = 1;
  return cm;
}

ChainMap death_map(const LinkDiagram &dp) {
  if (dp.nfree < 1) throw DiagramError("death needs a free circle");
  ChainMap cm;
  cm.src = build_total(dp);
  LinkDiagram d = dp;
  d.nfree -= 1;
  d.derive();
  cm.tgt = build_total(d);
  cm.f.assign(cm.src.cx.size(), {});
  for (int g = 0; g < cm.src.cx.size(); ++g) {
    const Gen &gen = cm.src.cx.gens[g];
    int nc = cm.src.ncirc[gen.u];
    uint32_t abit = uint32_t(1) << (nc - 1);
    if (!(gen.x & abit)) continue;  // project to the a-containing summand
    cm.f[g].push_back({cm.tgt.gen_index(gen.u, gen.x & ~abit), RingElement::one()});
  }
  cm.dgh = 0;
  cm.dgq = 1;
  return cm;
}

ChainMap saddle_map(const LinkDiagram &parent, int c) {
  ResolvedDiagram r0 = resolve_crossing(parent, c, 0);
  ResolvedDiagram r1 = resolve_crossing(parent, c, 1);
  TotalComplex tp = build_total(parent);

  ChainMap cm;
  cm.src = build_total(r0.d);
  cm.tgt = build_total(r1.d);
  cm.f.assign(cm.src.cx.size(), {});

  int n = parent.n();
  auto lift_u = [&](uint32_t u_small, int bit) {
    // insert `bit` at position c
    uint32_t low = u_small & ((uint32_t(1) << c) - 1);
    uint32_t high = u_small >> c;
    return low | (uint32_t(bit) << c) | (high << (c + 1));
  };
  auto drop_u = [&](uint32_t u_big) {
    uint32_t low = u_big & ((uint32_t(1) << c) - 1);
    uint32_t high = u_big >> (c + 1);
    return low | (high << c);
  };
  (void)n;

  // translate generators of C(D0) to parent vertices u (c = 0-resolution)
  for (int g = 0; g < cm.src.cx.size(); ++g) {
    const Gen &gen = cm.src.cx.gens[g];
    uint32_t u_par = lift_u(gen.u, 0);
    Resolution rp = resolve(parent, u_par);
    Resolution rs = resolve(r0.d, gen.u);
    std::vector<int> tr = circle_translation(rp, rs, r0.edge_map);
    // x mask on parent circles -> x on D0 circles is a bijection; we need the
    // inverse direction here, so build it
    uint32_t x_par = 0;
    for (int i = 0; i < (int)rp.circles.size(); ++i)
      if ((gen.x >> tr[i]) & 1) x_par |= uint32_t(1) << i;
    int src_par = tp.gen_index(u_par, x_par);
    for (auto &p : tp.cx.d[src_par]) {
      const Gen &tgen = tp.cx.gens[p.first];
      if (!((tgen.u >> c) & 1)) continue;  // keep only the through-c block
      uint32_t v_small = drop_u(tgen.u);
      Resolution rvp = resolve(parent, tgen.u);
      Resolution rvs = resolve(r1.d, v_small);
      std::vector<int> trv = circle_translation(rvp, rvs, r1.edge_map);
      uint32_t y_small = 0;
      for (int i = 0; i < (int)rvp.circles.size(); ++i)
        if ((tgen.x >> i) & 1) y_small |= uint32_t(1) << trv[i];
      cm.f[g].push_back({cm.tgt.gen_index(v_small, y_small), p.second});
    }
    std::sort(cm.f[g].begin(), cm.f[g].end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
  }
  // declared shift measured from any nonzero cell, net of H/W exponents
  cm.dgh = INT_MIN;
  for (int g = 0; g < cm.src.cx.size() && cm.dgh == INT_MIN; ++g)
    for (auto &p : cm.f[g]) {
      Mono m = p.second.terms().front();
      cm.dgh = cm.tgt.cx.gens[p.first].gh - m.w - cm.src.cx.gens[g].gh;
      cm.dgq = cm.tgt.cx.gens[p.first].gq - 2 * m.h - 2 * m.w - cm.src.cx.gens[g].gq;
      break;
    }
  if (cm.dgh == INT_MIN) cm.dgh = cm.dgq = 0;
  return cm;
}

}  // namespace khw

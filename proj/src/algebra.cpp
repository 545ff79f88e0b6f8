#include "khw/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace khw {

RingElement Complex::entry(int s, int t) const {
  for (auto &p : d[s])
    if (p.first == t) return p.second;
  return RingElement::zero();
}

void Complex::add_entry(int s, int t, const RingElement &e) {
  if (e.is_zero()) return;
  auto &row = d[s];
  auto it = std::lower_bound(row.begin(), row.end(), t,
                             [](const auto &p, int v) { return p.first < v; });
  if (it != row.end() && it->first == t) {
    it->second += e;
    if (it->second.is_zero()) row.erase(it);
  } else {
    row.insert(it, {t, e});
  }
}

std::vector<std::pair<int, int>> check_homogeneous(const Complex &c) {
  std::vector<std::pair<int, int>> bad;
  for (int s = 0; s < c.size(); ++s)
    for (auto &p : c.d[s]) {
      const Gen &a = c.gens[s], &b = c.gens[p.first];
      for (auto &m : p.second.terms()) {
        bool ok = (b.gh - m.w) == a.gh + 1;
        if (c.graded == Graded::Bigraded)
          ok = ok && (b.gq - 2 * m.h - 2 * m.w) == a.gq;
        if (!ok) {
          bad.push_back({s, p.first});
          break;
        }
      }
    }
  return bad;
}

std::vector<D2Cell> d_squared(const Complex &c) {
  std::vector<D2Cell> out;
  for (int s = 0; s < c.size(); ++s) {
    std::map<int, RingElement> acc;
    for (auto &p : c.d[s])
      for (auto &q : c.d[p.first]) {
        RingElement prod = p.second * q.second;
        if (prod.is_zero()) continue;
        auto it = acc.find(q.first);
        if (it == acc.end()) acc.emplace(q.first, prod);
        else {
          it->second += prod;
          if (it->second.is_zero()) acc.erase(it);
        }
      }
    for (auto &kv : acc) out.push_back({s, kv.first, kv.second});
  }
  return out;
}

namespace {

struct Reducer {
  Ring ring;
  int n;
  std::vector<std::map<int, RingElement>> row;  // out-entries per source
  std::vector<std::set<int>> col;               // sources per target
  std::vector<char> alive;

  explicit Reducer(const Complex &c) : ring(c.ring), n(c.size()) {
    row.resize(n);
    col.resize(n);
    alive.assign(n, 1);
    for (int s = 0; s < n; ++s)
      for (auto &p : c.d[s]) {
        row[s][p.first] = p.second;
        col[p.first].insert(s);
      }
  }

  long long fill(int s, int t) const {
    return (long long)(row[s].size() - 1) * (long long)(col[t].size() - 1);
  }

  const std::vector<Gen> *gens = nullptr;

  void run() {
    // Pivots are taken in order of increasing homological jump, then fill-in.
    // Cancelling a minimal-jump unit only creates entries of jump >= that
    // minimum, so filtered complexes reduce without ever producing loops.
    auto jump = [&](int s, int t) { return (long long)(*gens)[t].gh - (*gens)[s].gh; };
    using Cand = std::tuple<long long, long long, int, int>;  // (jump, fill, src, tgt)
    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> pq;
    auto push_unit = [&](int s, int t) {
      auto it = row[s].find(t);
      if (it != row[s].end() && it->second.is_unit(ring))
        pq.push({jump(s, t), fill(s, t), s, t});
    };
    for (int s = 0; s < n; ++s)
      for (auto &p : row[s])
        if (p.second.is_unit(ring)) pq.push({jump(s, p.first), fill(s, p.first), s, p.first});

    while (!pq.empty()) {
      auto [j, f, s, t] = pq.top();
      pq.pop();
      if (!alive[s] || !alive[t]) continue;
      auto it = row[s].find(t);
      if (it == row[s].end() || !it->second.is_unit(ring)) continue;
      if (fill(s, t) != f) {
        pq.push({j, fill(s, t), s, t});
        continue;
      }
      // cancel generators s and t with pivot row[s][t]
      RingElement pinv = it->second.unit_inverse(ring);
      std::vector<std::pair<int, RingElement>> outs;
      for (auto &p : row[s])
        if (p.first != t) outs.push_back(p);
      std::vector<std::pair<int, RingElement>> ins;
      for (int s2 : col[t])
        if (s2 != s) ins.push_back({s2, row[s2][t]});
      // detach s and t entirely
      for (auto &p : row[s]) col[p.first].erase(s);
      row[s].clear();
      for (int s2 : std::vector<int>(col[t].begin(), col[t].end())) row[s2].erase(t);
      col[t].clear();
      for (auto &p : row[t]) col[p.first].erase(t);
      row[t].clear();
      for (int t2 : std::vector<int>(col[s].begin(), col[s].end())) {
        row[t2].erase(s);
      }
      col[s].clear();
      alive[s] = alive[t] = 0;
      // zigzag updates
      for (auto &[s2, e_in] : ins) {
        RingElement left = e_in * pinv;
        for (auto &[t2, e_out] : outs) {
          RingElement add = left * e_out;
          if (add.is_zero()) continue;
          auto rit = row[s2].find(t2);
          if (rit == row[s2].end()) {
            row[s2][t2] = add;
            col[t2].insert(s2);
            push_unit(s2, t2);
          } else {
            rit->second += add;
            if (rit->second.is_zero()) {
              row[s2].erase(rit);
              col[t2].erase(s2);
            } else {
              push_unit(s2, t2);
            }
          }
        }
      }
    }
  }
};

}  // namespace

Complex gauss_reduce(const Complex &c) {
  Reducer r(c);
  r.gens = &c.gens;
  r.run();
  Complex out;
  out.ring = c.ring;
  out.graded = c.graded;
  out.qshift = c.qshift;
  std::vector<int> remap(c.size(), -1);
  for (int i = 0; i < c.size(); ++i)
    if (r.alive[i]) {
      remap[i] = out.size();
      out.gens.push_back(c.gens[i]);
    }
  out.d.resize(out.gens.size());
  for (int s = 0; s < c.size(); ++s) {
    if (!r.alive[s]) continue;
    for (auto &p : r.row[s]) out.d[remap[s]].push_back({remap[p.first], p.second});
    std::sort(out.d[remap[s]].begin(), out.d[remap[s]].end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
  }
  return out;
}

BettiTable homology_f2(const Complex &c) {
  assert(c.ring == Ring::F2);
  Complex r = gauss_reduce(c);
  for (auto &row : r.d) assert(row.empty());
  BettiTable t;
  for (auto &g : r.gens) {
    std::pair<int, int> key{0, 0};
    if (c.graded == Graded::Bigraded) key = {g.gh, g.gq + c.qshift};
    else if (c.graded == Graded::HOnly) key = {g.gh, 0};
    t.counts[key]++;
    t.total++;
  }
  return t;
}

// ---- Smith normal form over F2[t] ----------------------------------------

namespace {

using PMat = std::vector<std::vector<Poly1>>;

int snf_rank(PMat &m, std::vector<Poly1> &diag, PMat *V, PMat *Vinv) {
  int rows = (int)m.size();
  int cols = rows ? (int)m[0].size() : 0;
  auto colop_add = [&](int dst, int src, Poly1 q) {
    // col dst += q * col src
    for (int r = 0; r < rows; ++r) m[r][dst] = m[r][dst] + q * m[r][src];
    if (V)
      for (int r = 0; r < (int)V->size(); ++r)
        (*V)[r][dst] = (*V)[r][dst] + q * (*V)[r][src];
    if (Vinv)
      for (int cc = 0; cc < (int)(*Vinv)[0].size(); ++cc)
        (*Vinv)[src][cc] = (*Vinv)[src][cc] + q * (*Vinv)[dst][cc];
  };
  auto colop_swap = [&](int a, int b) {
    if (a == b) return;
    for (int r = 0; r < rows; ++r) std::swap(m[r][a], m[r][b]);
    if (V)
      for (int r = 0; r < (int)V->size(); ++r) std::swap((*V)[r][a], (*V)[r][b]);
    if (Vinv) std::swap((*Vinv)[a], (*Vinv)[b]);
  };
  auto rowop_add = [&](int dst, int src, Poly1 q) {
    for (int cc = 0; cc < cols; ++cc) m[dst][cc] = m[dst][cc] + q * m[src][cc];
  };
  auto rowop_swap = [&](int a, int b) {
    if (a != b) std::swap(m[a], m[b]);
  };

  // diagonalize the submatrix starting at position k0
  auto eliminate_from = [&](int k0) {
    int k = k0;
    while (k < rows && k < cols) {
      int br = -1, bc = -1, bd = INT_MAX;
      for (int r = k; r < rows; ++r)
        for (int cc = k; cc < cols; ++cc)
          if (!m[r][cc].is_zero() && m[r][cc].degree() < bd) {
            bd = m[r][cc].degree();
            br = r;
            bc = cc;
          }
      if (br < 0) break;
      rowop_swap(k, br);
      colop_swap(k, bc);
      bool again = true;
      while (again) {
        again = false;
        for (int r = k + 1; r < rows; ++r) {
          if (m[r][k].is_zero()) continue;
          Poly1 q, rem;
          m[r][k].divmod(m[k][k], q, rem);
          rowop_add(r, k, q);
          if (!rem.is_zero()) { rowop_swap(k, r); again = true; }
        }
        for (int cc = k + 1; cc < cols; ++cc) {
          if (m[k][cc].is_zero()) continue;
          Poly1 q, rem;
          m[k][cc].divmod(m[k][k], q, rem);
          colop_add(cc, k, q);
          if (!rem.is_zero()) { colop_swap(k, cc); again = true; }
        }
      }
      ++k;
    }
    return k;
  };

  int k = eliminate_from(0);
  // divisibility chain: fold offenders back in and re-diagonalize
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < k && !changed; ++i)
      for (int j = i + 1; j < k && !changed; ++j)
        if (!m[i][i].divides(m[j][j])) {
          colop_add(i, j, Poly1::one());
          eliminate_from(i);
          changed = true;
        }
  }
  diag.clear();
  for (int i = 0; i < k; ++i) diag.push_back(m[i][i]);
  return k;
}

Poly1 ring_entry_to_poly(const RingElement &e, Ring ring) {
  Poly1 p = Poly1::zero();
  for (auto &m : e.terms()) {
    if (ring == Ring::F2H) {
      assert(m.w == 0);
      p = p + Poly1::tpow(m.h);
    } else {
      assert(m.h == 0);
      p = p + Poly1::tpow(m.w);
    }
  }
  return p;
}

}  // namespace

std::vector<Poly1> snf_diagonal(PMat m) {
  std::vector<Poly1> diag;
  snf_rank(m, diag, nullptr, nullptr);
  return diag;
}

std::vector<PidRow> homology_pid(const Complex &cin) {
  assert(cin.ring == Ring::F2H || cin.ring == Ring::F2W);
  Complex c = gauss_reduce(cin);
  bool sliced = (cin.ring == Ring::F2H) || (cin.graded == Graded::Bigraded);
  auto slice_of = [&](const Gen &g) {
    if (cin.ring == Ring::F2H) return g.gh;
    return 2 * g.gh - (g.gq + cin.qshift);
  };
  int step = (cin.ring == Ring::F2H) ? 1 : 2;

  std::vector<PidRow> out;
  if (sliced) {
    // chain complexes indexed by the slice value
    std::map<int, std::vector<int>> level;  // slice -> generator ids
    for (int i = 0; i < c.size(); ++i) level[slice_of(c.gens[i])].push_back(i);
    std::map<int, std::pair<int, std::vector<Poly1>>> dinfo;  // slice -> rank,factors of d_slice
    for (auto &kv : level) {
      int s = kv.first;
      auto itn = level.find(s + step);
      int nt = itn == level.end() ? 0 : (int)itn->second.size();
      PMat m(kv.second.size(), std::vector<Poly1>(std::max(nt, 1), Poly1::zero()));
      if (nt) {
        std::map<int, int> tidx;
        for (int j = 0; j < nt; ++j) tidx[itn->second[j]] = j;
        for (int i = 0; i < (int)kv.second.size(); ++i)
          for (auto &p : c.d[kv.second[i]]) {
            auto ti = tidx.find(p.first);
            assert(ti != tidx.end());
            m[i][ti->second] = ring_entry_to_poly(p.second, cin.ring);
          }
      }
      std::vector<Poly1> diag;
      int r = snf_rank(m, diag, nullptr, nullptr);
      dinfo[s] = {r, diag};
    }
    for (auto &kv : level) {
      int s = kv.first;
      int n_s = (int)kv.second.size();
      int r_out = dinfo[s].first;
      int r_in = 0;
      std::vector<Poly1> tors;
      auto itp = dinfo.find(s - step);
      if (itp != dinfo.end()) {
        r_in = itp->second.first;
        for (auto &f : itp->second.second)
          if (!f.is_zero() && !f.is_one()) tors.push_back(f);
      }
      PidRow row{s, n_s - r_out - r_in, tors};
      if (row.free_rank != 0 || !row.torsion.empty()) out.push_back(row);
    }
  } else {
    // differential module: H = ker A / im A via kernel basis
    int n = c.size();
    PMat A(n, std::vector<Poly1>(std::max(n, 1), Poly1::zero()));
    for (int i = 0; i < n; ++i)
      for (auto &p : c.d[i]) A[p.first][i] = ring_entry_to_poly(p.second, cin.ring);
    // columns of A = images of basis vectors; kernel via column transforms
    PMat M = A;
    PMat V(n, std::vector<Poly1>(n, Poly1::zero()));
    PMat Vinv(n, std::vector<Poly1>(n, Poly1::zero()));
    for (int i = 0; i < n; ++i) V[i][i] = Vinv[i][i] = Poly1::one();
    std::vector<Poly1> diag;
    int r = snf_rank(M, diag, &V, &Vinv);
    // B = rows r..n-1 of Vinv * A : presentation of H on the kernel basis
    PMat B(std::max(n - r, 0), std::vector<Poly1>(std::max(n, 1), Poly1::zero()));
    for (int i = r; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Poly1 acc = Poly1::zero();
        for (int k2 = 0; k2 < n; ++k2) acc = acc + Vinv[i][k2] * A[k2][j];
        B[i - r][j] = acc;
      }
    std::vector<Poly1> bd;
    int rb = 0;
    if (n - r > 0) {
      PMat BB = B;
      std::vector<Poly1> d2;
      rb = snf_rank(BB, d2, nullptr, nullptr);
      bd = d2;
    }
    std::vector<Poly1> tors;
    for (auto &f : bd)
      if (!f.is_zero() && !f.is_one()) tors.push_back(f);
    out.push_back(PidRow{0, (n - r) - rb, tors});
  }
  return out;
}

LocHomology homology_localized(const Complex &cin) {
  assert(cin.ring == Ring::F2HlocW);
  Complex c = gauss_reduce(cin);
  LocHomology h;
  h.free_rank = c.size();
  // remaining entries are W^b times a unit; report their W-SNF per slice
  bool empty = true;
  for (auto &row : c.d)
    if (!row.empty()) empty = false;
  if (empty) return h;
  int n = c.size();
  PMat A(n, std::vector<Poly1>(n, Poly1::zero()));
  for (int i = 0; i < n; ++i)
    for (auto &p : c.d[i])
      for (auto &m : p.second.terms()) A[p.first][i] = A[p.first][i] + Poly1::tpow(m.w);
  std::vector<Poly1> diag;
  int r = snf_rank(A, diag, nullptr, nullptr);
  h.free_rank = n - 2 * r;
  for (auto &f : diag)
    if (!f.is_zero() && !f.is_one()) h.torsion_w.push_back(f);
  return h;
}

f2::BitMatrix to_bitmatrix(const Complex &c) {
  assert(c.ring == Ring::F2);
  f2::BitMatrix m(c.size(), c.size());
  for (int s = 0; s < c.size(); ++s)
    for (auto &p : c.d[s])
      m.set(p.first, s, true);  // column s = image of generator s
  return m;
}

std::optional<std::vector<uint8_t>> solve_f2(const f2::BitMatrix &a,
                                             const std::vector<uint8_t> &b) {
  return a.solve(b);
}

}  // namespace khw

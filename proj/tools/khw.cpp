// khw: computes the F2[H,W] link-homology complex of a decorated PD diagram,
// its specializations, and the upright-set concordance invariants.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "khw/invariants.hpp"
#include "khw/io.hpp"

using namespace khw;

namespace {

struct Report {
  json j;
  bool timings = false;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  Report(const std::string &cmd, const std::string &input_blob) {
    j["schema"] = 1;
    j["command"] = cmd;
    j["input_digest"] = fnv1a_hex(input_blob);
  }
  int finish(bool ok, const std::string &format) {
    j["ok"] = ok;
    if (timings) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      j["wall_time_ms"] = ms;
    }
    if (format == "tsv") {
      std::function<void(const std::string &, const json &)> walk =
          [&](const std::string &prefix, const json &v) {
            if (v.is_object()) {
              for (auto &kv : v.items())
                walk(prefix.empty() ? kv.key() : prefix + "." + kv.key(), kv.value());
            } else if (v.is_array()) {
              int i = 0;
              for (auto &e : v) walk(prefix + "[" + std::to_string(i++) + "]", e);
            } else {
              std::cout << prefix << "\t" << v.dump() << "\n";
            }
          };
      walk("", j);
    } else {
      std::cout << j.dump(2) << std::endl;
    }
    return ok ? 0 : 1;
  }
};

std::string slurp(const std::string &path_or_text) {
  if (path_or_text.rfind("PD", 0) == 0 || path_or_text.rfind("U", 0) == 0)
    return path_or_text;
  std::ifstream in(path_or_text);
  if (!in) throw DiagramError("cannot open input: " + path_or_text);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json pid_rows_json(const std::vector<PidRow> &rows, const char *slice_name) {
  json out = json::array();
  for (auto &r : rows) {
    json e;
    e[slice_name] = r.slice;
    e["free_rank"] = r.free_rank;
    json tor = json::array();
    for (auto &f : r.torsion)
      tor.push_back(f.is_monomial() ? json(f.degree()) : json(f.str()));
    e["torsion"] = tor;
    out.push_back(e);
  }
  return out;
}

json betti_json(const BettiTable &t, Graded graded) {
  json out;
  json rows = json::array();
  for (auto &kv : t.counts) {
    json e;
    if (graded == Graded::Bigraded) {
      e["gr_h"] = kv.first.first;
      e["gr_q"] = kv.first.second;
    } else if (graded == Graded::HOnly) {
      e["gr_h"] = kv.first.first;
    }
    e["rank"] = kv.second;
    rows.push_back(e);
  }
  out["ranks"] = rows;
  out["total"] = t.total;
  return out;
}

int cmd_homology(const std::string &input, const std::string &theory,
                 const std::string &format, bool timings) {
  std::string blob = slurp(input);
  Report rep("homology --theory " + theory, blob);
  rep.timings = timings;
  LinkDiagram d = load_diagram(input);
  TotalComplex tc = build_total(d);
  json res;
  res["diagram"] = diagram_to_json(d);
  if (theory == "kh") {
    Complex c = theory_kh(tc.cx);
    res["theory"] = "Khovanov (H=0, W=0)";
    res["homology"] = betti_json(homology_f2(c), Graded::Bigraded);
  } else if (theory == "bn") {
    Complex c = theory_bn(tc.cx);
    res["theory"] = "Bar-Natan over F2[H] (W=0)";
    res["homology"] = pid_rows_json(homology_pid(c), "gr_h");
  } else if (theory == "sz") {
    Complex c = theory_sz(tc.cx);
    res["theory"] = "geometric complex over F2[W] (H=0)";
    res["homology"] = pid_rows_json(homology_pid(c), "delta_slice");
  } else if (theory == "tot-fH") {
    Complex c = theory_fhtot(tc.cx);
    res["theory"] = "filtered total over F2[W] (H=1)";
    res["homology"] = pid_rows_json(homology_pid(c), "slice");
  } else if (theory == "ftot") {
    Complex c = theory_ftot(tc.cx);
    res["theory"] = "fully filtered total (H=W=1)";
    res["homology"] = betti_json(homology_f2(c), Graded::Ungraded);
  } else if (theory == "loc") {
    LocHomology h = homology_localized(theory_localized(tc.cx));
    res["theory"] = "localized over F2[H,H^-1,W]";
    res["free_rank"] = h.free_rank;
    json tor = json::array();
    for (auto &f : h.torsion_w)
      tor.push_back(f.is_monomial() ? json(f.degree()) : json(f.str()));
    res["torsion_w"] = tor;
  } else {
    throw DiagramError("unknown theory: " + theory);
  }
  rep.j["results"] = res;
  return rep.finish(true, format);
}

int cmd_s(const std::string &input, std::vector<std::string> uprights,
          const std::string &variant, bool genus, const std::string &format, bool timings) {
  std::string blob = slurp(input);
  std::string cmd = "s";
  for (auto &u : uprights) cmd += " --upright " + u;
  Report rep(cmd + " --variant " + variant, blob);
  rep.timings = timings;
  LinkDiagram d = load_diagram(input);
  json res;
  res["diagram"] = diagram_to_json(d);
  json vals = json::array();
  for (auto &spec : uprights) {
    UprightSet u = UprightSet::parse(spec);
    json e;
    e["upright"] = u.str();
    if (variant == "o" || variant == "all") e["s_o"] = s_invariant(d, u, SVariant::O);
    if (variant == "minus-o" || variant == "all")
      e["s_minus_o"] = s_invariant(d, u, SVariant::MinusO);
    if (variant == "pair" || variant == "all")
      e["s_pair"] = s_invariant(d, u, SVariant::Pair);
    vals.push_back(e);
  }
  res["s"] = vals;
  if (genus) {
    Rational g = genus_bound(d);
    res["four_ball_genus_lower_bound"] =
        g.den == 1 ? json(g.num) : json(std::to_string(g.num) + "/" + std::to_string(g.den));
  }
  rep.j["results"] = res;
  return rep.finish(true, format);
}

int cmd_verify(const std::string &input, bool d2, bool all_deco, int random_deco,
               bool axioms, bool reduced, const std::string &format, bool timings) {
  std::string blob = slurp(input);
  Report rep("verify", blob);
  rep.timings = timings;
  LinkDiagram d = load_diagram(input);
  json res;
  res["diagram"] = diagram_to_json(d);
  bool ok = true;
  if (!d2 && !all_deco && !random_deco && !axioms && !reduced) {
    // bare `verify` runs the whole battery at a size-appropriate depth
    d2 = axioms = true;
    if (d.n() <= 8) all_deco = true;
    else random_deco = 100;
    reduced = d.basepoint >= 0 || d.basepoint_free >= 0;
  }

  auto d2_report = [&](const LinkDiagram &dd) {
    TotalComplex tc = build_total(dd);
    auto bad = d_squared(tc.cx);
    if (bad.empty()) return json(nullptr);
    json cells = json::array();
    for (size_t i = 0; i < bad.size() && i < 32; ++i) {
      const Gen &gs = tc.cx.gens[bad[i].src], &gt = tc.cx.gens[bad[i].tgt];
      json c;
      c["from"] = {{"u", gs.u}, {"x", gs.x}};
      c["to"] = {{"u", gt.u}, {"x", gt.x}};
      c["value"] = bad[i].val.str();
      cells.push_back(c);
    }
    return cells;
  };

  if (d2) {
    json bad = d2_report(d);
    res["d_squared"] = bad.is_null() ? json("ok") : bad;
    if (!bad.is_null()) ok = false;
  }
  if (all_deco || random_deco) {
    std::mt19937 rng(20240801);
    int n = d.n(), failures = 0, runs = 0;
    std::vector<uint32_t> masks;
    if (all_deco && n <= 20)
      for (uint32_t m = 0; m < (1u << n); ++m) masks.push_back(m);
    for (int i = 0; i < random_deco; ++i) masks.push_back(rng() & ((1u << n) - 1));
    json first_bad = nullptr;
    for (uint32_t m : masks) {
      LinkDiagram dd = d;
      dd.deco.assign(n, 0);
      for (int i = 0; i < n; ++i) dd.deco[i] = (m >> i) & 1;
      dd.derive();
      ++runs;
      json bad = d2_report(dd);
      if (!bad.is_null()) {
        ++failures;
        if (first_bad.is_null()) first_bad = {{"decoration", m}, {"cells", bad}};
      }
    }
    res["decoration_sweep"] = {{"runs", runs}, {"failures", failures}};
    if (failures) {
      res["decoration_sweep"]["first_failure"] = first_bad;
      ok = false;
    }
  }
  if (axioms) {
    std::mt19937 rng(4096);
    int cases = 0, bad = 0;
    uint32_t full = (1u << d.n()) - 1;
    for (int trial = 0; trial < 2000 && d.n() > 0; ++trial) {
      LinkDiagram dd = d;
      for (auto &b : dd.deco) b = rng() & 1;
      dd.derive();
      uint32_t v = rng() & full, u = rng() & v;
      LabeledCfg lc;
      lc.cfg = configuration(dd, u, v);
      uint32_t ns = (uint32_t)lc.cfg.circles.size();
      uint32_t ne = (uint32_t)dual_config(lc.cfg).circles.size();
      lc.x = rng() & ((1u << ns) - 1);
      lc.y = rng() & ((1u << ne) - 1);
      int vals[4] = {eval_k(lc), eval_b(lc), eval_d(lc), eval_h(lc)};
      Cfg dual = dual_config(lc.cfg);
      LabeledCfg md{mirror_cfg(dual), ~lc.y & ((1u << ne) - 1), ~lc.x & ((1u << ns) - 1)};
      LabeledCfg rev{reverse_cfg(lc.cfg), lc.x, lc.y};
      ++cases;
      if (eval_k(md) != vals[0] || eval_b(md) != vals[1] || eval_d(md) != vals[2] ||
          eval_h(md) != vals[3] || eval_d(rev) != vals[2])
        ++bad;
    }
    res["axioms"] = {{"cases", cases}, {"failures", bad}};
    if (bad) ok = false;
  }
  if (reduced) {
    if (d.basepoint < 0 && d.basepoint_free < 0) {
      res["reduced"] = "no basepoint";
      ok = false;
    } else {
      TotalComplex tc = build_total(d);
      ReducedPair rp = reduced_split(tc, d);
      bool rok = d_squared(rp.minus).empty() && d_squared(rp.plus).empty() &&
                 rp.minus.size() + rp.plus.size() == tc.cx.size();
      res["reduced"] = {{"minus_generators", rp.minus.size()},
                        {"plus_generators", rp.plus.size()},
                        {"ok", rok}};
      if (!rok) ok = false;
    }
  }
  rep.j["results"] = res;
  return rep.finish(ok, format);
}

int cmd_reduce(const std::string &input, const std::string &out_path,
               const std::string &format, bool timings) {
  std::string blob = slurp(input);
  Report rep("reduce", blob);
  rep.timings = timings;
  LinkDiagram d = load_diagram(input);
  TotalComplex tc = build_total(d);
  Complex r = gauss_reduce(tc.cx);
  json cj = complex_to_json(r);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << cj.dump(2) << std::endl;
    rep.j["results"] = {{"generators", r.size()}, {"written", out_path}};
  } else {
    rep.j["results"] = {{"generators", r.size()}, {"complex", cj}};
  }
  return rep.finish(true, format);
}

int cmd_moves(const std::string &input, const std::string &apply, bool check,
              const std::string &format, bool timings) {
  std::string blob = slurp(input);
  Report rep("moves --apply " + apply, blob);
  rep.timings = timings;
  LinkDiagram d0 = load_diagram(input);
  LinkDiagram d = d0;
  // move list grammar: "R1+:edge,R1-:edge,R2:a/b,R3:edge" (internal edge ids)
  std::stringstream ss(apply);
  std::string item;
  json applied = json::array();
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw DiagramError("bad move item: " + item);
    std::string kind = item.substr(0, colon), site = item.substr(colon + 1);
    if (kind == "R1+") d = apply_move(d, Move::R1Plus, std::stoi(site));
    else if (kind == "R1-") d = apply_move(d, Move::R1Minus, std::stoi(site));
    else if (kind == "R2") {
      auto slash = site.find('/');
      if (slash == std::string::npos) throw DiagramError("R2 needs a/b edges");
      d = apply_move(d, Move::R2, std::stoi(site.substr(0, slash)),
                     std::stoi(site.substr(slash + 1)));
    } else if (kind == "R3") {
      d = apply_move(d, Move::R3, std::stoi(site));
    } else {
      throw DiagramError("unknown move: " + kind);
    }
    applied.push_back(item);
  }
  json res;
  res["applied"] = applied;
  res["diagram"] = diagram_to_json(d);
  bool ok = true;
  if (check) {
    auto tables = [](const LinkDiagram &dd) {
      TotalComplex tc = build_total(dd);
      json t;
      t["kh"] = betti_json(homology_f2(theory_kh(tc.cx)), Graded::Bigraded);
      t["bn"] = pid_rows_json(homology_pid(theory_bn(tc.cx)), "gr_h");
      t["sz"] = pid_rows_json(homology_pid(theory_sz(tc.cx)), "delta_slice");
      t["ftot_rank"] = homology_f2(theory_ftot(tc.cx)).total;
      return t;
    };
    json before = tables(d0), after = tables(d);
    ok = before == after;
    res["homology_unchanged"] = ok;
    if (!ok) {
      res["before"] = before;
      res["after"] = after;
    }
  }
  rep.j["results"] = res;
  return rep.finish(ok, format);
}

int cmd_tag(const std::string &path, const std::string &format, bool timings) {
  std::ifstream in(path);
  if (!in) throw DiagramError("cannot open configuration dump: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  Report rep("tag", text);
  rep.timings = timings;
  std::istringstream ls(text);
  std::string line, body;
  uint32_t x = 0, y = 0;
  auto parse_bits = [](const std::string &s) {
    uint32_t v = 0;
    int i = 0;
    for (char ch : s) {
      if (ch == '0' || ch == '1') {
        if (ch == '1') v |= 1u << i;
        ++i;
      }
    }
    return v;
  };
  while (std::getline(ls, line)) {
    if (line.rfind("x:", 0) == 0) x = parse_bits(line.substr(2));
    else if (line.rfind("y:", 0) == 0) y = parse_bits(line.substr(2));
    else body += line + "\n";
  }
  LabeledCfg lc{cfg_parse(body), x, y};
  rep.j["results"] = {{"family", family_name(classify_labeled(lc))},
                      {"k", eval_k(lc)},
                      {"b", eval_b(lc)},
                      {"d", eval_d(lc)},
                      {"h", eval_h(lc)}};
  return rep.finish(true, format);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"perturbed geometric link homology over F2[H,W]"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  bool timings = false;
  app.add_option("--format", format, "output format: json or tsv")
      ->check(CLI::IsMember({"json", "tsv"}));
  app.add_flag("--timings", timings, "include wall time (breaks byte-identical output)");

  std::string input, theory = "ftot", variant = "o", apply, out_path;
  std::vector<std::string> uprights;
  bool d2 = false, all_deco = false, axioms = false, reduced = false, genus = false;
  int random_deco = 0;

  auto *hom = app.add_subcommand("homology", "homology rank tables of a specialization");
  hom->add_option("--theory", theory, "kh|bn|sz|tot-fH|ftot|loc")
      ->check(CLI::IsMember({"kh", "bn", "sz", "tot-fH", "ftot", "loc"}));
  hom->add_option("input", input, "diagram file or PD text")->required();

  auto *sc = app.add_subcommand("s", "upright-set concordance invariants");
  sc->add_option("--upright", uprights, "upright set spec (repeatable)");
  sc->add_option("--variant", variant, "o|minus-o|pair|all")
      ->check(CLI::IsMember({"o", "minus-o", "pair", "all"}));
  sc->add_flag("--genus", genus, "also report the four-ball genus lower bound");
  sc->add_option("input", input, "diagram file or PD text")->required();

  auto *ver = app.add_subcommand("verify", "verification suites (exit 1 on failure)");
  ver->add_flag("--d-squared", d2, "check the differential squares to zero");
  ver->add_flag("--all-decorations", all_deco, "sweep every decoration");
  ver->add_option("--random-decorations", random_deco, "additionally sweep N random ones");
  ver->add_flag("--axioms", axioms, "randomized contribution-rule axioms");
  ver->add_flag("--reduced", reduced, "reduced subcomplex checks (needs basepoint)");
  ver->add_option("input", input, "diagram file or PD text")->required();

  auto *red = app.add_subcommand("reduce", "export the unit-cancelled F2[H,W] complex");
  red->add_option("-o,--output", out_path, "write the complex JSON here");
  red->add_option("input", input, "diagram file or PD text")->required();

  auto *mov = app.add_subcommand("moves", "apply Reidemeister moves");
  mov->add_option("--apply", apply, "e.g. R1+:3,R2:1/5,R3:4 (internal edge ids)")
      ->required();
  bool no_check = false;
  mov->add_flag("--no-check", no_check, "skip the homology-equality re-check");
  mov->add_option("input", input, "diagram file or PD text")->required();

  auto *tag = app.add_subcommand("tag", "classify a dumped labeled configuration");
  tag->add_option("input", input, "configuration dump file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }
  try {
    if (*hom) return cmd_homology(input, theory, format, timings);
    if (*sc) {
      if (uprights.empty()) uprights.push_back("t=1");
      return cmd_s(input, uprights, variant, genus, format, timings);
    }
    if (*ver)
      return cmd_verify(input, d2, all_deco, random_deco, axioms, reduced, format, timings);
    if (*red) return cmd_reduce(input, out_path, format, timings);
    if (*mov) return cmd_moves(input, apply, !no_check, format, timings);
    if (*tag) return cmd_tag(input, format, timings);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 2;
}

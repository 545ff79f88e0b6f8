#include "khw/io.hpp"

#include <fstream>
#include <sstream>

namespace khw {

LinkDiagram diagram_from_json(const json &j) {
  std::vector<std::array<int, 4>> pd;
  if (j.contains("pd"))
    for (auto &t : j["pd"]) {
      if (t.size() != 4) throw DiagramError("pd entries must be 4-tuples");
      pd.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>(), t[3].get<int>()});
    }
  int unknots = j.value("unknots", 0);
  std::vector<int> deco;
  if (j.contains("decorations"))
    for (auto &b : j["decorations"]) deco.push_back(b.get<int>());
  int bp = -1;
  if (j.contains("basepoint") && !j["basepoint"].is_null()) bp = j["basepoint"].get<int>();
  std::vector<int> orient;
  if (j.contains("orientations"))
    for (auto &s : j["orientations"]) orient.push_back(s.get<int>());
  LinkDiagram d = from_pd(pd, unknots, deco, bp, orient);
  if (j.contains("basepoint_free") && !j["basepoint_free"].is_null()) {
    d.basepoint_free = j["basepoint_free"].get<int>();
    d.derive();
  }
  return d;
}

LinkDiagram load_diagram(const std::string &path_or_text) {
  if (path_or_text.rfind("PD", 0) == 0 || path_or_text.rfind("U", 0) == 0)
    return parse_pd(path_or_text);
  std::ifstream in(path_or_text);
  if (!in) throw DiagramError("cannot open diagram file: " + path_or_text);
  json j;
  in >> j;
  return diagram_from_json(j);
}

json diagram_to_json(const LinkDiagram &d) {
  json j;
  j["pd"] = json::array();
  for (auto &t : d.xing)
    j["pd"].push_back({d.ext[t[0]], d.ext[t[1]], d.ext[t[2]], d.ext[t[3]]});
  j["decorations"] = d.deco;
  if (d.basepoint >= 0) j["basepoint"] = d.ext[d.basepoint];
  else j["basepoint"] = nullptr;
  if (d.basepoint_free >= 0) j["basepoint_free"] = d.basepoint_free;
  if (d.nfree) j["unknots"] = d.nfree;
  j["components"] = d.ncomp;
  j["n_plus"] = d.nplus;
  j["n_minus"] = d.nminus;
  return j;
}

json complex_to_json(const Complex &c) {
  json j;
  j["schema"] = 1;
  j["ring"] = ring_name(c.ring);
  j["qshift"] = c.qshift;
  j["generators"] = json::array();
  for (auto &g : c.gens) {
    json e;
    e["u"] = g.u;
    e["x"] = g.x;
    e["gr_h"] = g.gh;
    e["gr_q"] = g.gq;
    j["generators"].push_back(e);
  }
  j["entries"] = json::array();
  for (int s = 0; s < c.size(); ++s)
    for (auto &p : c.d[s]) {
      json e;
      e["from"] = s;
      e["to"] = p.first;
      json poly = json::array();
      for (auto &m : p.second.terms()) poly.push_back({m.h, m.w});
      e["poly"] = poly;
      j["entries"].push_back(e);
    }
  return j;
}

Complex complex_from_json(const json &j) {
  Complex c;
  std::string ring = j.value("ring", "F2[H,W]");
  if (ring == "F2") c.ring = Ring::F2;
  else if (ring == "F2[H]") c.ring = Ring::F2H;
  else if (ring == "F2[W]") c.ring = Ring::F2W;
  else if (ring == "F2[H,W]") c.ring = Ring::F2HW;
  else if (ring == "F2[H,H^-1,W]") c.ring = Ring::F2HlocW;
  else throw DiagramError("unknown ring tag: " + ring);
  c.qshift = j.value("qshift", 0);
  for (auto &e : j["generators"]) {
    Gen g;
    g.u = e.value("u", 0u);
    g.x = e.value("x", 0u);
    g.gh = e["gr_h"].get<int>();
    g.gq = e["gr_q"].get<int>();
    c.gens.push_back(g);
  }
  c.d.resize(c.gens.size());
  for (auto &e : j["entries"]) {
    RingElement r;
    for (auto &m : e["poly"]) r.add_monomial(m[0].get<int>(), m[1].get<int>());
    c.add_entry(e["from"].get<int>(), e["to"].get<int>(), r);
  }
  return c;
}

std::string fnv1a_hex(const std::string &data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace khw

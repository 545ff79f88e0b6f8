#include "doctest.h"

#include "khw/io.hpp"
#include "testutil.hpp"

using namespace khw;
using namespace khw::test;

TEST_CASE("diagram json round trip") {
  LinkDiagram t = from_pd({{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 3}}, 1, {1, 0, 1}, 4);
  json j = diagram_to_json(t);
  LinkDiagram back = diagram_from_json(j);
  CHECK(back.n() == 3);
  CHECK(back.nfree == 1);
  CHECK(back.deco == t.deco);
  CHECK(back.ext[back.basepoint] == 4);
  CHECK(back.nplus == t.nplus);
  // serialization is deterministic
  CHECK(diagram_to_json(back).dump() == j.dump());
}

TEST_CASE("orientations option via json") {
  json j;
  j["pd"] = {{4, 1, 3, 2}, {2, 3, 1, 4}};
  j["orientations"] = {1, -1};
  LinkDiagram h = diagram_from_json(j);
  CHECK(h.nminus == 2);
}

TEST_CASE("complex export and import round trip") {
  LinkDiagram d = with_deco(trefoil(), 0);
  TotalComplex tc = build_total(d);
  Complex r = gauss_reduce(tc.cx);
  json j = complex_to_json(r);
  Complex back = complex_from_json(j);
  REQUIRE(back.size() == r.size());
  for (int s = 0; s < r.size(); ++s) {
    CHECK(back.gens[s].gh == r.gens[s].gh);
    CHECK(back.gens[s].gq == r.gens[s].gq);
    CHECK(back.d[s] == r.d[s]);
  }
  // exports are byte-stable
  CHECK(complex_to_json(back).dump() == j.dump());
}

TEST_CASE("digest is stable") {
  CHECK(fnv1a_hex("abc") == fnv1a_hex("abc"));
  CHECK(fnv1a_hex("abc") != fnv1a_hex("abd"));
}

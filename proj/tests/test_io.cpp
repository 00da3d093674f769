#include "doctest.h"
#include "heytica/catalog.hpp"
#include "heytica/io.hpp"
#include "oracles.hpp"

using namespace heytica;

TEST_CASE("poset round trip") {
  for (const Poset& p : {chain(3), antichain(2), mk_poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})}) {
    Poset q = poset_from_json(to_json(p));
    CHECK(q.size() == p.size());
    CHECK(q.covers() == p.covers());
  }
}

TEST_CASE("poset input errors") {
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"n":2})")), FormatError);
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"n":0,"covers":[]})")), FormatError);
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"n":2,"covers":[[0,2]]})")), FormatError);
  CHECK_THROWS_AS(poset_from_json(parse_json(R"({"n":2,"covers":[[0]]})")), FormatError);
  CHECK_THROWS_AS(parse_json("{"), FormatError);
  CHECK_THROWS(poset_from_json(parse_json(R"({"n":2,"covers":[[0,1],[1,0]]})")));
}

TEST_CASE("algebra and elements") {
  HAlg h = algebra_of(chain(2));
  HAlg g = algebra_from_json(to_json(h, {"p", "q"}));
  CHECK(g.size() == 3);
  CHECK(algebra_from_json(to_json(chain(2))).size() == 3);
  CHECK_THROWS_AS(algebra_from_json(parse_json(R"({"dual":{"n":2,"covers":[]},"labels":["a"]})")), FormatError);
  for (Bits x : h.elements()) CHECK(element_from_json(h, element_json(x)) == x);
  // {0} is not an up-set when 0 < 1
  CHECK_THROWS_AS(element_from_json(h, parse_json("[0]")), BadElement);
  CHECK_THROWS_AS(element_from_json(h, parse_json("[5]")), FormatError);
}

TEST_CASE("hom and diagram") {
  HAlg two = algebra_of(chain(1));
  HAlg c3 = algebra_of(chain(2));
  Hom e = embeddings_between(two, c3).at(0);
  Hom f = hom_from_json(to_json(e));
  CHECK(f.dual.map == e.dual.map);
  CHECK(f.injective());

  Diagram d{two, c3, c3, e, e};
  Diagram r = diagram_from_json(to_json(d));
  CHECK(r.e_c.dual.map == e.dual.map);
  json bad = to_json(d);
  bad["e_b"] = json::array({0});
  CHECK_THROWS_AS(diagram_from_json(bad), FormatError);
}

TEST_CASE("chain round trip") {
  Chain c = new_chain();
  saturate(c, 3, 1);
  Chain r = chain_from_json(to_json(c));
  REQUIRE(r.levels.size() == c.levels.size());
  CHECK(chain_valid(r));
  CHECK(to_json(r) == to_json(c));
  json bad = to_json(c);
  bad["steps"] = json::array();
  CHECK_THROWS_AS(chain_from_json(bad), FormatError);
}

TEST_CASE("tables round trip") {
  HAlg h = algebra_of(antichain(2));
  RawTables t = tables_from_json(to_json(tables_of(h)));
  CHECK(validate_heyting_tables(t).algebra.size() == 4);
}

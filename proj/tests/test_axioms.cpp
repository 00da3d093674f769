#include "doctest.h"
#include "heytica/axioms.hpp"
#include "heytica/catalog.hpp"

using namespace heytica;

namespace {

const Chain& saturated() {
  static const Chain c = [] {
    Chain x = new_chain();
    saturate(x, 3, 2);
    return x;
  }();
  return c;
}

Diagram over_two(const HAlg& b, const HAlg& c) {
  HAlg two = algebra_of(chain(1));
  return Diagram{two, b, c, embeddings_between(two, b).at(0), embeddings_between(two, c).at(0)};
}

}  // namespace

TEST_CASE("sampled configurations") {
  const Chain& c = saturated();
  auto x = sample_configs(c, 40, 5);
  auto y = sample_configs(c, 40, 5);
  REQUIRE(x.size() == 40);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(x[i].level == y[i].level);
    CHECK(x[i].a == y[i].a);
    CHECK(x[i].b == y[i].b);
    CHECK(x[i].level >= 1);
    CHECK(x[i].level <= c.top_index());
    const HAlg& h = c.levels[x[i].level];
    std::vector<Bits> all = x[i].a;
    for (const auto* s : {&x[i].b, &x[i].c, &x[i].d}) all.insert(all.end(), s->begin(), s->end());
    CHECK(generated_elements(h, all).size() <= 256);
  }
  CHECK(sample_configs(new_chain(), 10, 0).empty());
  CHECK_THROWS_AS(generated_elements(c.top(), {c.top().dual().up(0)}, 2), SizeError);
}

TEST_CASE("stationarity probe") {
  HAlg c3 = algebra_of(chain(2));
  HAlg two = algebra_of(chain(1));
  StationarityProbe p = stationarity_probe(over_two(c3, c3));
  CHECK(p.exact);
  CHECK(p.decided);
  CHECK_FALSE(p.stationary);
  StationarityProbe q = stationarity_probe(over_two(two, c3));
  CHECK(q.decided);
  CHECK(q.stationary);
  CHECK(q.classes == 1);
}

TEST_CASE("axiom suite on a saturate(3,2) chain") {
  const Chain& c = saturated();
  auto configs = sample_configs(c, 200, 0);
  AxiomReport r = axiom_suite(c, configs);
  CHECK(r.configs == 200);
  for (const char* a : {"existence", "invariance", "monotonicity", "monotonicity_base", "symmetry", "transitivity",
                        "base_restriction"}) {
    CAPTURE(a);
    CHECK(r.ok(a));
  }
  CHECK(r.axioms.at("existence").checked == 200);
  CHECK(r.axioms.at("symmetry").checked == 200);
  CHECK(r.axioms.at("transitivity").checked > 0);
  CHECK(r.existence_deferred == 0);
  // Free amalgams over a base are not unique: a real counterexample turns up.
  const AxiomTally& st = r.axioms.at("stationarity");
  CHECK(st.failed > 0);
  CHECK_FALSE(r.ok("stationarity"));
  REQUIRE_FALSE(st.counterexamples.empty());
  CHECK(st.counterexamples.front() < configs.size());

  // Deterministic.
  AxiomReport x = axiom_suite(c, sample_configs(c, 50, 3));
  AxiomReport y = axiom_suite(c, sample_configs(c, 50, 3));
  CHECK(x.axioms.at("stationarity").failed == y.axioms.at("stationarity").failed);
  CHECK(x.axioms.at("stationarity").counterexamples == y.axioms.at("stationarity").counterexamples);
  CHECK(x.stationarity_undecided == y.stationarity_undecided);
}

TEST_CASE("axioms with a faulty independence relation") {
  const Chain& c = saturated();
  set_independence_fault(true);
  AxiomReport r = axiom_suite(c, sample_configs(c, 40, 1));
  set_independence_fault(false);
  bool any = false;
  for (const auto& [name, t] : r.axioms) any = any || t.failed > 0;
  CHECK(any);
}

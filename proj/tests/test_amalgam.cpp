#include "doctest.h"
#include "heytica/amalgam.hpp"
#include "heytica/catalog.hpp"
#include "oracles.hpp"

using namespace heytica;

namespace {
HAlg two() { return algebra_of(chain(1)); }
HAlg c3() { return algebra_of(chain(2)); }
Diagram c3_over_two() {
  auto e = embeddings_between(two(), c3()).at(0);
  return Diagram{two(), c3(), c3(), e, e};
}
}  // namespace

TEST_CASE("superamalgamate examples") {
  Diagram d = c3_over_two();
  Amalgam m = superamalgamate(d);
  CHECK(m.result.size() == 6);
  CHECK_FALSE(m.fallback_used);
  CHECK(oracle::brute_isomorphic(m.result.dual(), mk_poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})));

  HAlg b4 = algebra_of(antichain(2));
  Diagram same{b4, b4, b4, identity_hom(b4), identity_hom(b4)};
  CHECK(superamalgamate(same).result.size() == 4);
  Diagram diag{c3(), c3(), c3(), identity_hom(c3()), identity_hom(c3())};
  CHECK(oracle::brute_isomorphic(superamalgamate(diag).result.dual(), chain(2)));

  // A surjection is not a diagram leg.
  Hom onto = dual_of_pmorphism(PMorphism{chain(1), chain(2), {1}});
  CHECK_THROWS(superamalgamate(Diagram{c3(), two(), c3(), onto, identity_hom(c3())}));
}

TEST_CASE("check_independence examples") {
  Diagram d = c3_over_two();
  Amalgam m = superamalgamate(d);
  const Bits a = bit(1);
  const Bits left = m.into_left(a), right = m.into_right(a);
  const std::vector<Bits> base{0, m.result.top()};
  CHECK(check_independence(m.result, {left}, base, {right}));
  // The top join-prime (a principal up-set of a maximal point) sits below left.
  int top_point = lowest(m.result.dual().maximal());
  Bits jp = m.result.dual().up(top_point);
  REQUIRE((jp & ~left) == 0);
  CHECK_FALSE(check_independence(m.result, {left}, base, {jp}));
  CHECK(check_independence(m.result, {left}, base, base));
  CHECK(indep_rel(m.result, {left}, {}, {right}));
  CHECK(indep_rel(m.result, {left}, {left}, {left}));
}

TEST_CASE("independence kernel: parallel matches serial") {
  HAlg h = algebra_of(mk_poset(5, {{0, 1}, {0, 2}, {1, 3}, {2, 4}}));
  const auto& e = h.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) {
      std::vector<Bits> s{e[i]}, t{e[j], e[(i + j) % e.size()]};
      std::vector<Bits> u{0, h.top(), e[(i * 7 + j) % e.size()]};
      REQUIRE(independence_counterexample(s, u, t, Exec::Serial) ==
              independence_counterexample(s, u, t, Exec::Parallel));
    }
  CHECK(independence_counterexample(e, {0, h.top()}, e, Exec::Serial) ==
        independence_counterexample(e, {0, h.top()}, e, Exec::Parallel));
}

TEST_CASE("fault injection flips the verdict") {
  Diagram d = c3_over_two();
  Amalgam m = superamalgamate(d);
  auto ib = image_elements(m.into_left), ic = image_elements(m.into_right), ia = image_elements(m.base_map(d));
  CHECK(check_independence(m.result, ib, ia, ic));
  set_independence_fault(true);
  CHECK_FALSE(check_independence(m.result, ib, ia, ic));
  set_independence_fault(false);
}

TEST_CASE("every diagram at dual <= 3 superamalgamates") {
  auto ds = all_diagrams(3);
  CHECK(ds.size() == 274);
  for (const auto& d : ds) {
    Amalgam m = superamalgamate(d);
    auto ch = check_amalgam(d, m);
    REQUIRE(ch.commutes);
    REQUIRE(ch.independent);
    REQUIRE(ch.disjoint);
    REQUIRE_FALSE(m.fallback_used);
    REQUIRE(m.into_left.injective());
    REQUIRE(m.into_right.injective());
    REQUIRE(m.result.points() <= d.b.points() * d.c.points());
  }
}

TEST_CASE("indep_rel is invariant under relabelling the dual") {
  HAlg h = algebra_of(mk_poset(4, {{0, 1}, {0, 2}, {2, 3}}));
  std::vector<int> perm{2, 0, 3, 1};
  HAlg g = algebra_of(h.dual().relabeled(perm));
  auto move = [&](Bits s) {
    Bits out = 0;
    for_each_bit(s, [&](int i) { out |= bit(perm[i]); });
    return out;
  };
  const auto& e = h.elements();
  for (Bits a : e)
    for (Bits c : e) {
      REQUIRE(indep_rel(h, {a}, {}, {c}) == indep_rel(g, {move(a)}, {}, {move(c)}));
    }
}

TEST_CASE("stationarity_check") {
  auto id = identity_hom(c3());
  auto r = stationarity_check(Diagram{c3(), c3(), c3(), id, id});
  CHECK(r.stationary);
  CHECK(r.classes == 1);
  // Over 2 the independent amalgams of two copies of C3 are not unique: the
  // grid and e.g. the claw with a = {x1, x2}, b = {x2, x3} both qualify.
  auto full = stationarity_check(c3_over_two(), 12, true);
  CHECK_FALSE(full.stationary);
  CHECK(full.classes == 26);
  auto quick = stationarity_check(c3_over_two());
  CHECK_FALSE(quick.stationary);
  CHECK(quick.classes == 2);
  CHECK_FALSE(quick.exhaustive);
}

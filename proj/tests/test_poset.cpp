#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "heytica/poset.hpp"
#include "oracles.hpp"

using namespace heytica;

TEST_CASE("mk_poset closes covers and rejects cycles") {
  Poset p1 = mk_poset(1, {});
  CHECK(p1.size() == 1);
  Poset c2 = mk_poset(2, {{0, 1}});
  CHECK(c2.leq(0, 1));
  CHECK_FALSE(c2.leq(1, 0));
  CHECK_THROWS_AS(mk_poset(2, {{0, 1}, {1, 0}}), CycleError);
  CHECK_THROWS_AS(mk_poset(2, {{0, 2}}), BadElement);
  Poset c3 = mk_poset(3, {{0, 1}, {1, 2}});
  CHECK(c3.leq(0, 2));
  CHECK(c3.covers() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("enumerate_upsets matches subset filtering") {
  CHECK(enumerate_upsets(chain(2)) == std::vector<Bits>{0, 0b10, 0b11});
  CHECK(enumerate_upsets(antichain(2)).size() == 4);
  CHECK(enumerate_upsets(disjoint_union(chain(2), antichain(1))).size() == 6);
  CHECK_THROWS_AS(enumerate_upsets(antichain(12), UpSetOptions{1000}), SizeError);
  for (int n = 1; n <= 4; ++n)
    for (const auto& p : oracle::brute_representatives(n)) {
      auto got = enumerate_upsets(p);
      auto want = oracle::brute_upsets(p);
      std::sort(got.begin(), got.end());
      CHECK(got == want);
      CHECK(count_upsets(p) == want.size());
    }
  CHECK(count_upsets(antichain(40)) == (std::size_t{1} << 40));
  CHECK(count_upsets(antichain(40), 1000) == 1000);
}

TEST_CASE("up_closure is the least up-set containing S") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& p : oracle::brute_representatives(n)) {
      auto ups = oracle::brute_upsets(p);
      for (Bits s = 0; s <= p.all(); ++s) {
        Bits least = p.all();
        for (Bits u : ups)
          if ((s & ~u) == 0) least &= u;
        REQUIRE(p.up_closure(s) == least);
      }
    }
}

TEST_CASE("is_pmorphism examples and agreement with the literal condition") {
  Poset c2 = chain(2), a2 = antichain(2), pt = chain(1);
  CHECK(is_pmorphism({0, 1}, c2, c2));
  CHECK(is_pmorphism({0, 0}, c2, pt));
  CHECK_FALSE(is_pmorphism({0, 0}, a2, c2));
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m)
      for (const auto& p : oracle::brute_representatives(n))
        for (const auto& q : oracle::brute_representatives(m)) {
          auto good = oracle::brute_pmorphisms(p, q);
          std::set<std::vector<int>> good_set(good.begin(), good.end());
          std::vector<int> f(n, 0);
          while (true) {
            REQUIRE(is_pmorphism(f, p, q) == good_set.count(f) > 0);
            int k = 0;
            while (k < n && ++f[k] == m) f[k++] = 0;
            if (k == n) break;
          }
        }
}

TEST_CASE("split_point") {
  auto r = split_point(chain(2), 0);
  CHECK(r.poset.size() == 3);
  CHECK(oracle::brute_isomorphic(r.poset, chain(3)));
  CHECK(is_pmorphism(r.collapse.map, r.poset, chain(2)));
  CHECK(r.poset.less(r.lower, r.upper));

  auto top = split_point(chain(2), 1);
  CHECK(oracle::brute_isomorphic(top.poset, chain(3)));
  CHECK(is_pmorphism(top.collapse.map, top.poset, chain(2)));

  auto iso = split_point(disjoint_union(chain(2), antichain(1)), 2);
  CHECK(oracle::brute_isomorphic(iso.poset, disjoint_union(chain(2), chain(2))));
  CHECK_THROWS_AS(split_point(chain(2), 5), BadElement);

  for (int n = 1; n <= 4; ++n)
    for (const auto& p : oracle::brute_representatives(n))
      for (int w = 0; w < n; ++w) {
        auto s = split_point(p, w);
        CHECK(is_pmorphism(s.collapse.map, s.poset, p));
        CHECK(s.collapse.surjective());
      }
}

TEST_CASE("adjoin_point") {
  CHECK(oracle::brute_isomorphic(adjoin_point(chain(1)).poset, antichain(2)));
  auto a = adjoin_point(chain(2));
  CHECK(oracle::brute_isomorphic(a.poset, disjoint_union(chain(2), antichain(1))));
  CHECK(a.fresh == 2);
  CHECK(oracle::brute_isomorphic(adjoin_point(adjoin_point(chain(1)).poset).poset, antichain(3)));
}

TEST_CASE("fibered_product") {
  PMorphism collapse{chain(2), chain(1), {0, 0}};
  auto grid = fibered_product(collapse, collapse);
  CHECK(grid.poset.size() == 4);
  CHECK(oracle::brute_isomorphic(grid.poset, mk_poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})));

  auto diag = fibered_product(identity_pmorphism(chain(2)), identity_pmorphism(chain(2)));
  CHECK(oracle::brute_isomorphic(diag.poset, chain(2)));

  Poset v = mk_poset(3, {{0, 1}, {0, 2}});
  PMorphism v_to_c2{v, chain(2), {0, 1, 1}};
  REQUIRE(is_pmorphism(v_to_c2.map, v, chain(2)));
  auto pb = fibered_product(identity_pmorphism(chain(2)), v_to_c2);
  CHECK(oracle::brute_isomorphic(pb.poset, v));

  CHECK_THROWS_AS(fibered_product(collapse, identity_pmorphism(chain(2))), TargetMismatch);
  PMorphism not_onto{chain(1), chain(2), {1}};
  CHECK_THROWS_AS(fibered_product(not_onto, not_onto), NotSurjective);
  PMorphism bad{antichain(2), chain(2), {0, 0}};
  CHECK_THROWS_AS(fibered_product(bad, bad), NotPMorphism);
}

TEST_CASE("fibered_product projections are surjective p-morphisms (bases <= 3, exhaustive)") {
  std::vector<Poset> small;
  for (int n = 1; n <= 3; ++n)
    for (auto& p : oracle::brute_representatives(n)) small.push_back(p);
  for (const auto& base : small) {
    std::vector<PMorphism> onto;
    for (const auto& src : small)
      for (auto& f : oracle::brute_pmorphisms(src, base)) {
        PMorphism pm{src, base, f};
        if (pm.surjective()) onto.push_back(pm);
      }
    for (const auto& a : onto)
      for (const auto& b : onto) {
        auto fp = fibered_product(a, b);
        REQUIRE(is_pmorphism(fp.left.map, fp.poset, a.source));
        REQUIRE(is_pmorphism(fp.right.map, fp.poset, b.source));
        REQUIRE(fp.left.surjective());
        REQUIRE(fp.right.surjective());
        for (int i = 0; i < fp.poset.size(); ++i) REQUIRE(a(fp.left(i)) == b(fp.right(i)));
        CHECK(fp.poset.size() <= a.source.size() * b.source.size());
      }
  }
}

TEST_CASE("canonical_form partitions like brute-force isomorphism") {
  CHECK(canonical_form(mk_poset(2, {{0, 1}})) == canonical_form(mk_poset(2, {{1, 0}})));
  CHECK(canonical_form(chain(2)) != canonical_form(antichain(2)));
  for (int n = 1; n <= 5; ++n) {
    std::map<std::string, std::string> brute_to_canon;
    std::set<std::string> canon_codes;
    for (const auto& p : oracle::all_labeled_posets(n)) {
      std::string b = oracle::brute_code(p);
      std::string c = canonical_form(p);
      auto [it, fresh] = brute_to_canon.emplace(b, c);
      REQUIRE(it->second == c);
      canon_codes.insert(c);
    }
    CHECK(canon_codes.size() == brute_to_canon.size());
  }
  std::set<std::string> four;
  for (const auto& p : oracle::brute_representatives(4)) four.insert(canonical_form(p));
  CHECK(four.size() == 16);
}

TEST_CASE("canonical_form is invariant under random relabelling of larger posets") {
  std::mt19937 rng(7);
  std::vector<Poset> samples = {antichain(12), disjoint_union(chain(3), chain(3)),
                                disjoint_union(disjoint_union(chain(2), chain(2)), chain(2))};
  for (int t = 0; t < 20; ++t) {
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j)
        if (rng() % 5 == 0) covers.emplace_back(i, j);
    samples.push_back(mk_poset(10, covers));
  }
  for (const auto& p : samples) {
    std::string c = canonical_form(p);
    for (int k = 0; k < 10; ++k) {
      std::vector<int> perm(p.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      Poset q = p.relabeled(perm);
      REQUIRE(canonical_form(q) == c);
      auto iso = find_isomorphism(p, q);
      REQUIRE(iso);
      for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) REQUIRE(p.leq(i, j) == q.leq((*iso)[i], (*iso)[j]));
    }
  }
}

TEST_CASE("coloured canonical forms distinguish colourings") {
  Poset a2 = antichain(2);
  CHECK(canonical_form(a2, {1, 0}) == canonical_form(a2, {0, 1}));
  Poset c2 = chain(2);
  CHECK(canonical_form(c2, {1, 0}) != canonical_form(c2, {0, 1}));
}

TEST_CASE("linear_extensions") {
  CHECK(linear_extensions(chain(2)).size() == 1);
  CHECK(linear_extensions(antichain(2)).size() == 2);
  CHECK(linear_extensions(antichain(3)).size() == 6);
  CHECK(linear_extensions(antichain(3)).front() == std::vector<int>{0, 1, 2});
  std::vector<Bits> cyc{bit(1), bit(2), bit(0)};
  CHECK_THROWS_AS(first_linear_extension(3, cyc), CycleError);
  // Each extension respects the order and they are pairwise distinct.
  Poset v = mk_poset(4, {{0, 1}, {0, 2}, {2, 3}});
  auto exts = linear_extensions(v);
  std::set<std::vector<int>> uniq(exts.begin(), exts.end());
  CHECK(uniq.size() == exts.size());
  CHECK(exts.size() == 3);
}

TEST_CASE("poset automorphisms") {
  CHECK(automorphisms(disjoint_union(chain(2), antichain(1))).size() == 1);
  CHECK(automorphisms(disjoint_union(chain(2), chain(2))).size() == 2);
  CHECK(automorphisms(antichain(3)).size() == 6);
}

TEST_CASE("forest detection and dot export") {
  CHECK(mk_poset(3, {{0, 1}, {0, 2}}).is_forest());
  CHECK_FALSE(mk_poset(3, {{1, 0}, {2, 0}}).is_forest());
  std::string dot = to_dot(chain(2));
  CHECK(dot.find("0 -> 1") != std::string::npos);
}

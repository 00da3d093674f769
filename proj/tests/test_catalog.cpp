#include <cstdio>
#include <random>

#include "doctest.h"
#include "heytica/catalog.hpp"
#include "oracles.hpp"

using namespace heytica;

TEST_CASE("poset counts against the brute-force classifier") {
  const std::size_t want[] = {1, 2, 5, 16, 63};
  for (int n = 1; n <= 5; ++n) {
    CHECK(enumerate_posets(n).size() == want[n - 1]);
    CHECK(oracle::brute_class_count(n) == want[n - 1]);
  }
  CHECK(enumerate_posets(6).size() == 318);
  CHECK_THROWS_AS(enumerate_posets(8), SizeError);
}

TEST_CASE("parallel and serial enumeration agree") {
  auto a = enumerate_posets(6, Exec::Serial);
  auto b = enumerate_posets(6, Exec::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("representatives are canonical and pairwise non-isomorphic") {
  for (int n = 1; n <= 4; ++n) {
    auto ps = enumerate_posets(n);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      CHECK(canonical_representative(ps[i]) == ps[i]);
      for (std::size_t j = i + 1; j < ps.size(); ++j) CHECK_FALSE(oracle::brute_isomorphic(ps[i], ps[j]));
    }
  }
}

TEST_CASE("canonical codes survive 100 random relabellings per entry") {
  std::mt19937 rng(1);
  for (int n = 1; n <= 5; ++n)
    for (const auto& p : enumerate_posets(n)) {
      CanonCode c = canonical_form(p);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (int k = 0; k < 100; ++k) {
        std::shuffle(perm.begin(), perm.end(), rng);
        REQUIRE(canonical_form(p.relabeled(perm)) == c);
      }
    }
}

TEST_CASE("posets_by_algebra_size") {
  auto ps = posets_by_algebra_size(4);
  // point (2), 2-chain (3), 3-chain (4), 2-antichain (4)
  CHECK(ps.size() == 4);
  for (const auto& p : posets_by_algebra_size(12)) CHECK(count_upsets(p) <= 12);
  std::size_t with_five_points = 0;
  for (const auto& p : posets_by_algebra_size(1000, 5)) with_five_points += p.size() == 5;
  CHECK(with_five_points == 63);
}

TEST_CASE("pmorphism search agrees with the literal condition") {
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 3; ++m)
      for (const auto& p : oracle::brute_representatives(n))
        for (const auto& q : oracle::brute_representatives(m)) {
          std::set<std::vector<int>> want;
          for (auto& f : oracle::brute_pmorphisms(p, q)) want.insert(f);
          std::set<std::vector<int>> got;
          for_each_pmorphism(p, q, false, [&](const std::vector<int>& f) {
            got.insert(f);
            return true;
          });
          REQUIRE(got == want);
          std::size_t surj = 0;
          for (auto& f : want) surj += PMorphism{p, q, f}.surjective();
          REQUIRE(surjective_pmorphisms(p, q).size() == surj);
        }
}

TEST_CASE("embeddings_between") {
  HAlg two = algebra_of(chain(1));
  HAlg c3 = algebra_of(chain(2));
  CHECK(embeddings_between(two, c3).size() == 1);
  CHECK(embeddings_between(c3, c3).size() == 1);
  HAlg grid = algebra_of(mk_poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  CHECK(embeddings_between(c3, grid).size() == count_embeddings_by_elements(c3, grid));
  CHECK(embeddings_between(c3, grid).size() == oracle::brute_embedding_count(c3, grid));
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m)
      for (const auto& p : oracle::brute_representatives(n))
        for (const auto& q : oracle::brute_representatives(m)) {
          HAlg a = algebra_of(p), b = algebra_of(q);
          auto embs = embeddings_between(a, b);
          REQUIRE(embs.size() == count_embeddings_by_elements(a, b));
          for (const auto& e : embs) {
            REQUIRE(e.injective());
            REQUIRE(preserves_operations(e));
          }
        }
}

TEST_CASE("catalog persistence") {
  Catalog c = build_catalog(5);
  CHECK(c.counts() == std::vector<std::size_t>{1, 2, 5, 16, 63});
  std::string text = catalog_to_string(c);
  Catalog back = catalog_from_string(text);
  CHECK(catalog_to_string(back) == text);
  CHECK(back.index() == c.index());
  const std::string path = "test_catalog_roundtrip.txt";
  save_catalog(c, path);
  CHECK(catalog_to_string(load_catalog(path)) == text);
  std::remove(path.c_str());

  std::string truncated = text.substr(0, text.size() - 3);
  try {
    catalog_from_string(truncated);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("line 87") != std::string::npos);
  }
  CHECK_THROWS_AS(catalog_from_string("2;0-1\n1;\n"), FormatError);
  CHECK_THROWS_AS(catalog_from_string("2;0-1,1-0\n"), FormatError);
  CHECK_THROWS_AS(load_catalog("/nonexistent/dir/x.txt"), IOError);
}

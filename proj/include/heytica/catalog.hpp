#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "heytica/exec.hpp"
#include "heytica/heyting.hpp"

namespace heytica {

/// One canonically labelled representative per isomorphism class on n points
/// (1 <= n <= 7), ordered by canonical code.
std::vector<Poset> enumerate_posets(int n, Exec exec = Exec::Parallel);

/// All posets (up to isomorphism) whose up-set algebra has at most
/// `max_elements` elements and at most `max_points` points, ordered by
/// (points, code).
std::vector<Poset> posets_by_algebra_size(std::size_t max_elements, int max_points = 12);

/// Poset relabelled into its canonical order.
Poset canonical_representative(const Poset& p);

/// Calls visit for every p-morphism src -> tgt (only surjective ones when
/// asked). Stops when visit returns false.
void for_each_pmorphism(const Poset& src, const Poset& tgt, bool surjective_only,
                        const std::function<bool(const std::vector<int>&)>& visit);
/// Same, with the image of each source point u restricted to allowed[u].
void for_each_pmorphism(const Poset& src, const Poset& tgt, bool surjective_only,
                        const std::vector<Bits>& allowed,
                        const std::function<bool(const std::vector<int>&)>& visit);
std::vector<std::vector<int>> surjective_pmorphisms(const Poset& src, const Poset& tgt);

/// Every Heyting embedding a -> b, one per surjective p-morphism
/// dual(b) -> dual(a).
std::vector<Hom> embeddings_between(const HAlg& a, const HAlg& b);
/// Same count found by searching element maps directly.
std::size_t count_embeddings_by_elements(const HAlg& a, const HAlg& b);

struct Catalog {
  /// by_size[n] = representatives on n points (index 0 unused).
  std::vector<std::vector<Poset>> by_size;

  int max_size() const { return static_cast<int>(by_size.size()) - 1; }
  std::vector<std::size_t> counts() const;
  /// Canonical code -> (size, index).
  std::map<CanonCode, std::pair<int, int>> index() const;
};

Catalog build_catalog(int max_n, Exec exec = Exec::Parallel);

/// Line format: `n;i-j,i-j,...` per poset (covers i < j), sizes ascending,
/// canonical-code order within a size.
std::string catalog_to_string(const Catalog& c);
/// Throws FormatError naming the line.
Catalog catalog_from_string(const std::string& text);
void save_catalog(const Catalog& c, const std::string& path);
Catalog load_catalog(const std::string& path);

}  // namespace heytica

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heytica/amalgam.hpp"
#include "heytica/envelope.hpp"

namespace heytica {

/// Finite stage of the limit: levels joined by embeddings.
struct Chain {
  std::vector<HAlg> levels;
  std::vector<Hom> steps;  // levels[i] -> levels[i + 1]
  int max_points = kMaxPoints;
  int max_levels = 40;

  int top_index() const { return static_cast<int>(levels.size()) - 1; }
  const HAlg& top() const { return levels.back(); }
  /// Composite embedding levels[from] -> levels[to], from <= to.
  Hom embed(int from, int to) const;
};

/// Hom a -> b given by its action on elements; ConstructionError unless f
/// is a Heyting homomorphism.
Hom element_hom(const HAlg& a, const HAlg& b, const std::function<Bits(Bits)>& f);

/// Chain with the single level 2.
Chain new_chain();

/// A -> B together with an embedding of A into the top level.
struct ExtensionTask {
  Hom pair;  // A -> B
  Hom base;  // A -> top
};

/// Embedding g: B -> h with g o pair = base, if one exists.
std::optional<Hom> find_compatible(const HAlg& h, const ExtensionTask& t);

/// Appends superamalgamate(top <- A -> B) as a new level and returns the
/// embedding of B into it. Throws TargetMismatch if the base does not land
/// in the top level and SizeError past the chain's bounds.
Hom realize(Chain& c, const ExtensionTask& t);

/// Proper catalog embeddings A -> B with |dual B| <= bound, largest B first.
std::vector<Hom> catalog_pairs(int bound);

struct SaturationReport {
  std::size_t tasks = 0;
  std::size_t realized = 0;
  std::size_t already = 0;   // B already sat over the base
  std::size_t deferred = 0;  // would exceed the size bounds
  std::vector<int> base_levels;
};

/// Round r takes every catalog pair with |dual B| <= pair_bound and every
/// embedding of A into level r, and realizes it unless the top already has
/// B over that base. A task that
/// would break the size bounds is counted as deferred; the chain keeps all
/// progress. `seed` shuffles the order within equal sizes (0: none).
SaturationReport saturate(Chain& c, int pair_bound, int rounds, std::uint64_t seed = 0);

/// Generators of a partial isomorphism between subalgebras of the top level.
struct PartialIso {
  std::vector<Bits> dom;
  std::vector<Bits> img;
};

/// Graph of the isomorphism generated by p, as (x, p(x)) pairs sorted by x.
/// Throws ConstructionError if p does not extend to an isomorphism.
std::vector<std::pair<Bits, Bits>> close_partial_iso(const HAlg& h, const PartialIso& p);

/// One back-and-forth step: returns p' extending p (moved into the possibly
/// grown top) whose domain also holds e, or, when !forward, whose image
/// does.
PartialIso extend_partial_iso(Chain& c, const PartialIso& p, Bits e, bool forward = true);

/// A one-level extension of h and an element of it.
struct Growth {
  std::optional<Hom> extension;  // h -> grown; none if h already sufficed
  const HAlg& result(const HAlg& h) const { return extension ? extension->target : h; }
  Bits lift(Bits x) const { return extension ? (*extension)(x) : x; }
};

struct DenseStep {
  Growth growth;
  Bits c = 0;
};
/// a < c < b, after splitting a dual point when b covers a.
DenseStep dense_step(const HAlg& h, Bits a, Bits b);
/// Grows the chain as needed and returns c in the new top.
Bits densify(Chain& c, Bits a, Bits b);

struct JoinStep {
  Growth growth;
  Bits b = 0;
  Bits c = 0;
};
/// a = b v c with b, c < a, doubling the principal up-set when a is
/// join-irreducible.
JoinStep join_step(const HAlg& h, Bits a);
std::pair<Bits, Bits> break_join_irreducible(Chain& c, Bits a);

/// Outcome of checking densify or break_join_irreducible over a chain.
struct LimitCheck {
  bool ok = true;
  std::string failure;
  /// Levels whose elements were all enumerated, and the inputs run there.
  std::vector<int> exhaustive_levels;
  std::size_t inputs = 0;
  /// Per-dual-point checks on levels too large to list. Every input's
  /// answer is built from one such point, so these cover all inputs.
  std::size_t point_checks = 0;
  /// Seeded random inputs run on the top level.
  std::size_t sampled = 0;
};

/// Levels with at most `list_cap` elements are checked on every input;
/// larger ones through their dual points plus `samples` random inputs.
LimitCheck check_density(const Chain& c, std::size_t samples = 2000, std::uint64_t seed = 0,
                         std::size_t list_cap = std::size_t{1} << 20);
LimitCheck check_irreducible(const Chain& c, std::size_t samples = 2000, std::uint64_t seed = 0,
                             std::size_t list_cap = std::size_t{1} << 20);

/// Whether interiors commute with the lifted connecting maps, on every
/// subset for small levels and on `samples` seeded subsets otherwise.
bool envelope_tower_commutes(const Chain& c, std::size_t samples = 256, std::uint64_t seed = 0);

/// Every connecting map is an embedding dual to a surjective p-morphism.
bool chain_valid(const Chain& c);

}  // namespace heytica

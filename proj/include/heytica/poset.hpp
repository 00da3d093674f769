#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heytica/bits.hpp"
#include "heytica/error.hpp"

namespace heytica {

/// Finite partial order on the dense indices 0..n-1.
///
/// The order is stored closed: `up(i)` is the set of j with i <= j and
/// `down(i)` the set of j with j <= i. Both always contain i.
class Poset {
 public:
  Poset() = default;

  /// Builds from a closed relation given as up-sets of each point.
  /// Throws CycleError if the relation is not antisymmetric and
  /// BadElement if it is not reflexive/transitive.
  static Poset from_up_sets(std::vector<Bits> up);

  int size() const { return static_cast<int>(up_.size()); }
  bool empty() const { return up_.empty(); }
  bool leq(int i, int j) const { return has(up_[i], j); }
  bool less(int i, int j) const { return i != j && leq(i, j); }
  Bits up(int i) const { return up_[i]; }
  Bits down(int i) const { return down_[i]; }
  Bits strict_up(int i) const { return up_[i] & ~bit(i); }
  Bits strict_down(int i) const { return down_[i] & ~bit(i); }
  Bits all() const { return full_mask(size()); }

  Bits up_closure(Bits s) const;
  Bits down_closure(Bits s) const;
  bool is_up_set(Bits s) const { return up_closure(s) == s; }

  Bits maximal() const;
  Bits minimal() const;
  /// Hasse diagram edges (i covered by j), sorted.
  std::vector<std::pair<int, int>> covers() const;
  /// Length of the longest chain ending at each point (minimal points have 0).
  std::vector<int> heights() const;

  /// Restriction to the listed points, renumbered in list order.
  Poset induced(const std::vector<int>& points) const;
  /// Relabels point i as perm[i].
  Poset relabeled(const std::vector<int>& perm) const;
  /// Order dual.
  Poset reversed() const;

  /// Every down-set of each point is a chain (roots are minimal).
  bool is_forest() const;

  friend bool operator==(const Poset& a, const Poset& b) { return a.up_ == b.up_; }

 private:
  std::vector<Bits> up_;
  std::vector<Bits> down_;
};

/// Reflexive-transitive closure of a cover list. Throws CycleError when the
/// closure identifies distinct points.
Poset mk_poset(int n, const std::vector<std::pair<int, int>>& covers);

Poset chain(int n);
Poset antichain(int n);
/// Disjoint union; points of b are shifted by a.size().
Poset disjoint_union(const Poset& a, const Poset& b);

/// Monotone map with the back condition, f(up u) = up f(u).
struct PMorphism {
  Poset source;
  Poset target;
  std::vector<int> map;

  int operator()(int p) const { return map[p]; }
  /// Inverse image of a subset of the target.
  Bits preimage(Bits t) const;
  /// Direct image of a subset of the source.
  Bits image(Bits s) const;
  bool surjective() const { return image(source.all()) == target.all(); }
  bool injective() const;
};

bool is_pmorphism(const std::vector<int>& f, const Poset& p, const Poset& q);
PMorphism identity_pmorphism(const Poset& p);
/// g after f. Requires f.target == g.source.
PMorphism compose(const PMorphism& f, const PMorphism& g);

struct UpSetOptions {
  std::size_t max_count = std::size_t{1} << 20;
};

/// All up-sets sorted by (cardinality, bit value). Throws SizeError past
/// `opts.max_count`.
std::vector<Bits> enumerate_upsets(const Poset& p, UpSetOptions opts = {});
/// Number of up-sets, stopping early once it exceeds `cap`.
std::size_t count_upsets(const Poset& p, std::size_t cap = ~std::size_t{0});

struct SplitResult {
  Poset poset;
  PMorphism collapse;
  int lower;  // w1
  int upper;  // w2
};

/// Replaces w by a 2-chain w1 < w2. w1 keeps w's index, w2 is appended.
SplitResult split_point(const Poset& p, int w);

struct AdjoinResult {
  Poset poset;
  int fresh;
};

AdjoinResult adjoin_point(const Poset& p);

struct FiberedProduct {
  Poset poset;
  PMorphism left;
  PMorphism right;
  /// Component pairs of each point.
  std::vector<std::pair<int, int>> pairs;
};

/// Pullback of two surjective p-morphisms onto a common target.
FiberedProduct fibered_product(const PMorphism& pi1, const PMorphism& pi2);
/// Point count of the pullback without building it.
std::size_t fibered_product_size(const PMorphism& pi1, const PMorphism& pi2);

/// Canonical code: equal for two (optionally vertex-coloured) posets iff an
/// order- and colour-preserving bijection exists.
using CanonCode = std::string;

struct Canonical {
  CanonCode code;
  /// order[k] is the point placed at canonical position k.
  std::vector<int> order;
};

Canonical canonical_labeling(const Poset& p, const std::vector<std::uint64_t>& colors = {});
CanonCode canonical_form(const Poset& p, const std::vector<std::uint64_t>& colors = {});

/// Colour-preserving order isomorphism a -> b, if one exists.
std::optional<std::vector<int>> find_isomorphism(const Poset& a, const Poset& b,
                                                 const std::vector<std::uint64_t>& ca = {},
                                                 const std::vector<std::uint64_t>& cb = {});

/// Calls `visit(order)` for every linear extension of the strict relation
/// `before` (before[i] = points that must come after i), in lexicographic
/// order of the sequences. Stops when `visit` returns false. Throws
/// CycleError if the relation has a cycle.
void for_each_linear_extension(int n, const std::vector<Bits>& before,
                               const std::function<bool(const std::vector<int>&)>& visit);
/// Linear extensions of a poset, listed from least to greatest element.
std::vector<std::vector<int>> linear_extensions(const Poset& p);
/// First linear extension of `before`; throws CycleError when cyclic.
std::vector<int> first_linear_extension(int n, const std::vector<Bits>& before);

/// Automorphisms of a poset as permutations.
std::vector<std::vector<int>> automorphisms(const Poset& p);

std::string to_dot(const Poset& p, const std::string& name = "P",
                   const std::vector<std::string>& labels = {});

}  // namespace heytica

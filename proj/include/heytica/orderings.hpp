#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heytica/amalgam.hpp"

namespace heytica {

/// Anti-lexicographic order on an algebra, fixed by a linear order on its
/// join-primes. Join-primes are identified with dual points (p <-> up(p)),
/// so I(b) is the set of points of b and the prime order must put p before
/// q whenever q < p in the dual.
struct NatOrder {
  HAlg algebra;
  /// Dual points from least to greatest.
  std::vector<int> prime_order;
  /// rank[p] = position of p in prime_order.
  std::vector<int> rank;

  /// Sum of 2^rank over the points of a; comparing keys is the alex rule.
  std::uint64_t key(Bits a) const;
  bool less(Bits a, Bits b) const { return key(a) < key(b); }
  /// All elements, least first.
  std::vector<Bits> full_order() const;
  /// full_order() as indices into algebra.elements().
  std::vector<int> as_permutation() const;
};

/// Join-primes below b, as dual points.
std::vector<int> prime_support(const HAlg& h, Bits b);

/// Throws NotExtension if `prime_order` is not a permutation extending the
/// order of the join-primes.
NatOrder natural_order(const HAlg& h, const std::vector<int>& prime_order);

/// One order per linear extension, deterministic; SizeError past `max_count`.
std::vector<NatOrder> all_natural_orders(const HAlg& h, std::size_t max_count = 40320);

/// Whether a total order on elements (indices into h.elements(), least
/// first) is a natural ordering.
bool is_admissible(const HAlg& h, const std::vector<int>& element_order);

/// Whether x < y in `small` iff f(x) < f(y) in `big` for all x, y.
bool restricts_to(const Hom& f, const NatOrder& big, const NatOrder& small);

/// Admissible order on f.target whose restriction along f is `o`. Throws
/// CycleError if the constraint relation is cyclic.
NatOrder extend_order(const Hom& f, const NatOrder& o);

struct OrderedAmalgam {
  Amalgam amalgam;
  NatOrder order;
  /// False when the fibered product admits no joint order and a sub-poset
  /// of it was used instead.
  bool on_product = true;
  /// Whether the amalgam used passes the independence checks.
  bool independent = true;
};

/// Natural order on left.target (== right.target) restricting to ob along
/// `left` and oc along `right`, by exact backtracking; nullopt if none.
std::optional<NatOrder> joint_order(const Hom& left, const NatOrder& ob, const Hom& right, const NatOrder& oc);

/// Orders the superamalgam so both legs restrict to the given orders. If the
/// fibered product has no such order, tries its sub-posets that still give an
/// amalgam (independent ones first). Throws NotExtension when the orders
/// disagree on the base and CycleError when nothing is found.
OrderedAmalgam ordered_amalgamate(const Diagram& d, const NatOrder& ob, const NatOrder& oc);

struct KptReport {
  HAlg a;
  HAlg b;
  Hom iota1;  // a -> y v z ... for a <1 b
  Hom iota2;
  std::vector<NatOrder> orders_a;  // [<1, <2]
  std::vector<NatOrder> orders_b;  // all 6
  /// embeds[i][j]: iota_i is an order-embedding of (A, orders_a[i]) into
  /// (B, orders_b[j]).
  std::vector<std::vector<bool>> embeds;
  int witness_order = -1;  // index of z <' y <' x in orders_b
  bool condition_i = false;
  bool condition_ii = false;
};

KptReport kpt_witness();

struct ForgetfulReport {
  HAlg h;
  HAlg h_prime;
  Hom embedding;
  std::size_t aut_h = 0;
  std::size_t aut_h_prime = 0;
  Bits a = 0;  // in h_prime
  Bits b = 0;
  NatOrder order;   // on h_prime with a before b
  NatOrder moved;   // the same order moved by the swap
  bool restrictions_admissible = false;
  bool restrictions_differ = false;
  bool differ_at_ab = false;
  bool same_orbit = false;
};

ForgetfulReport order_forgetful_counterexample();

}  // namespace heytica

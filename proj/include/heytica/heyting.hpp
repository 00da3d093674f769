#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heytica/poset.hpp"

namespace heytica {

/// Finite nontrivial Heyting algebra, held as the up-set algebra of its dual
/// poset. Elements are up-sets (`Bits`); 0 is the empty set and 1 the full
/// set. The element list is materialized on first use and shared by copies.
class HAlg {
 public:
  HAlg() = default;
  /// Throws DegenerateError on an empty poset.
  explicit HAlg(Poset dual);

  const Poset& dual() const { return dual_; }
  int points() const { return dual_.size(); }

  Bits bottom() const { return 0; }
  Bits top() const { return dual_.all(); }
  Bits meet(Bits a, Bits b) const { return a & b; }
  Bits join(Bits a, Bits b) const { return a | b; }
  /// Largest up-set W with W & a <= b: complement of the down-closure of a \ b.
  Bits implies(Bits a, Bits b) const { return top() & ~dual_.down_closure(a & ~b); }
  Bits neg(Bits a) const { return implies(a, 0); }
  bool leq(Bits a, Bits b) const { return (a & ~b) == 0; }
  bool contains(Bits a) const { return (a & ~top()) == 0 && dual_.is_up_set(a); }

  /// All elements ordered by (cardinality, bit value). Throws SizeError past
  /// `max_count`.
  const std::vector<Bits>& elements(std::size_t max_count = std::size_t{1} << 20) const;
  std::size_t size() const;
  /// Position of `a` in elements(); -1 if absent.
  int index_of(Bits a) const;

 private:
  struct Cache;
  Poset dual_;
  std::shared_ptr<Cache> cache_;
};

/// Heyting homomorphism source -> target, carried by its dual p-morphism
/// target.dual() -> source.dual(); the element map is inverse image.
struct Hom {
  HAlg source;
  HAlg target;
  PMorphism dual;

  Bits operator()(Bits a) const { return dual.preimage(a); }
  bool injective() const { return dual.surjective(); }
  bool surjective() const { return dual.injective(); }
};

Hom identity_hom(const HAlg& h);
/// g after f.
Hom compose(const Hom& f, const Hom& g);
/// Explicit check of 0, 1, meet, join and implication on all elements.
bool preserves_operations(const Hom& f);

HAlg algebra_of(const Poset& p);
Bits implies(const HAlg& h, Bits u, Bits v);

/// Nonzero elements a with a <= b v c implying a <= b or a <= c, found by
/// scanning the element list.
std::vector<Bits> join_primes(const HAlg& h);

/// A finite Heyting algebra given as a set of elements of a host algebra,
/// re-expressed in dual form together with the inclusion into the host.
struct Represented {
  HAlg algebra;
  Hom inclusion;        // algebra -> host
  std::vector<Bits> primes;  // host elements that are the join-primes, by dual point
};

/// Re-expresses a Heyting subalgebra (given by its elements) in dual form.
Represented represent_subalgebra(const HAlg& host, const std::vector<Bits>& elements);

struct DualPoset {
  Poset poset;
  std::vector<Bits> primes;
  Hom iso;  // algebra_of(poset) -> h
};

/// Poset of join-primes under the reversed order, with the isomorphism
/// algebra_of(poset) -> h.
DualPoset dual_poset(const HAlg& h);

/// Dual of a p-morphism: algebra_of(target) -> algebra_of(source), U -> f^-1(U).
Hom dual_of_pmorphism(const PMorphism& f);

/// Closure of s together with 0 and 1 under meet, join and implication,
/// sorted by (cardinality, value).
/// Throws SizeError once more than `max_count` elements turn up.
std::vector<Bits> generated_elements(const HAlg& h, const std::vector<Bits>& s,
                                     std::size_t max_count = SIZE_MAX);
Represented generated_subalgebra(const HAlg& h, const std::vector<Bits>& s);

struct RawTables {
  int size = 0;
  std::vector<std::vector<int>> meet;
  std::vector<std::vector<int>> join;
  std::vector<std::vector<int>> imp;
  int zero = 0;
  int one = 0;
};

struct ValidatedTables {
  HAlg algebra;
  /// Up-set representing each table element.
  std::vector<Bits> element;
};

/// Checks lattice axioms, bounds, distributivity and the residuation
/// adjunction; returns the dual-represented algebra.
ValidatedTables validate_heyting_tables(const RawTables& t);
/// Tables of an up-set algebra, elements indexed as in h.elements().
RawTables tables_of(const HAlg& h);

std::vector<Hom> automorphisms(const HAlg& h);

/// H with a new least element below 0_H. Dually a new top point.
struct StarAlgebra {
  HAlg algebra;
  int new_point = 0;
  Bits embed(Bits a) const { return a | bit(new_point); }
  Bits old_bottom() const { return bit(new_point); }
};

StarAlgebra add_bottom(const HAlg& h);

/// Terms over 0, 1, x, y with meet, join and implication.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Op { Zero, One, X, Y, And, Or, Imp };
  Op op;
  TermPtr lhs;
  TermPtr rhs;

  static TermPtr zero();
  static TermPtr one();
  static TermPtr x();
  static TermPtr y();
  static TermPtr make(Op op, TermPtr a, TermPtr b);
};

/// S-expression syntax: 0, 1, x, y, (and a b), (or a b), (-> a b).
TermPtr parse_term(const std::string& text);
std::string to_string(const TermPtr& t);
int depth(const TermPtr& t);
bool uses_y(const TermPtr& t);

struct Assignment {
  std::optional<Bits> x;
  std::optional<Bits> y;
};

Bits eval_term(const TermPtr& t, const HAlg& h, const Assignment& env);
/// Replaces every constant 0 by the variable y.
TermPtr star_term(const TermPtr& t);

}  // namespace heytica

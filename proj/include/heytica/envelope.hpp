#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heytica/heyting.hpp"

namespace heytica {

/// Powerset of the dual points of `base` with the interior operator
/// S -> largest up-set inside S. Elements are arbitrary subsets (`Bits`).
struct BoolEnv {
  HAlg base;

  int points() const { return base.points(); }
  Bits top() const { return base.top(); }
  Bits interior(Bits s) const;
  Bits complement(Bits s) const { return top() & ~s; }
  /// Number of subsets, 2^points. Materialized listings are refused above
  /// 20 points.
  std::size_t size() const;
  std::vector<Bits> elements() const;
};

/// Throws SizeError above 64 dual points.
BoolEnv envelope(const HAlg& h);

/// Boolean homomorphism B(f) between envelopes, acting by inverse image along
/// the dual p-morphism of f.
struct BoolHom {
  BoolEnv source;
  BoolEnv target;
  PMorphism dual;

  Bits operator()(Bits s) const { return dual.preimage(s); }
  bool injective() const { return dual.surjective(); }
  bool surjective() const { return dual.injective(); }
};

BoolHom lift_hom(const Hom& f);

/// Outcome of growing H so that a nonzero envelope element gains a proper
/// nonzero part.
struct AtomlessSplit {
  HAlg grown;
  Hom embedding;  // H -> grown
  Bits lifted;    // B(embedding)(b)
  Bits part;      // 0 < part < lifted
  int split_at;   // dual point of H that was split
};

/// Splits a dual point inside b. Throws ZeroElement when b is empty.
AtomlessSplit atomless_split(const HAlg& h, Bits b);

/// Fixed points of double negation with the Boolean operations
/// meet = meet, join = not not (a or b), complement = not.
struct RegularAlg {
  HAlg host;
  std::vector<Bits> elements;

  bool contains(Bits a) const { return host.neg(host.neg(a)) == a; }
  Bits meet(Bits a, Bits b) const { return a & b; }
  Bits join(Bits a, Bits b) const { return host.neg(host.neg(a | b)); }
  Bits complement(Bits a) const { return host.neg(a); }
  std::vector<Bits> atoms() const;
  /// Checks the Boolean algebra laws on all elements.
  bool is_boolean() const;
};

RegularAlg regular_elements(const HAlg& h);

struct Forestified {
  HAlg algebra;
  Hom embedding;  // h -> algebra
  /// Dual point of `algebra` -> path of dual points of h it stands for.
  std::vector<std::vector<int>> paths;
};

/// Unravels the dual into cover paths that start at minimal points, mapped to
/// their last point. Returns the identity when the dual is already a forest.
Forestified forestify(const HAlg& h);

/// Result of doubling an up-set a of the dual: the dual becomes
/// (P \ a) + a_1 + a_2, each copy keeping the order from below.
struct Doubled {
  HAlg algebra;
  Hom embedding;  // h -> algebra, dual to the collapse
  Bits copy1;
  Bits copy2;
};

Doubled double_upset(const HAlg& h, Bits a);

struct RSplit {
  HAlg algebra;
  Hom embedding;
  Bits r1;
  Bits r2;
  bool root = false;
};

/// Requires a forest dual and a principal a = up(x). For a root x returns
/// (h, id, a, a).
RSplit r_split(const HAlg& h, Bits a);

struct SixAtomReport {
  std::vector<std::pair<std::string, HAlg>> stages;
  HAlg ambient;
  /// a01, a02, a11, a12, a21, a22 in the ambient algebra.
  std::vector<Bits> generators;
  int atom_count = 0;
  bool six_atoms = false;
  /// The cyclic shift a_ji -> a_(j+1)i preserves every meet/complement
  /// relation among the generators.
  bool permutation_extends = false;
  bool joins_differ = false;
  bool identity_joins_equal = false;
  /// a11 v a12 equals the image of a_1.5.
  bool split_join_ok = false;
};

SixAtomReport six_atom_witness();

}  // namespace heytica

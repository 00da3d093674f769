#pragma once

#include <map>
#include <string>
#include <vector>

#include "heytica/limit.hpp"

namespace heytica {

/// Named algebras plus checkable verdicts.
struct WitnessReport {
  struct Stage {
    std::string name;
    HAlg algebra;
    std::vector<Bits> generators;
    CanonCode code;
  };
  std::vector<Stage> stages;
  std::map<std::string, bool> verdicts;
  /// Per stage: a term of depth <= 4 labelling it, or "unlabelled".
  std::vector<std::string> labels;
  bool ok() const;
};

/// Finite algebra generated by one element x outside {0, 1}.
struct OneGenerated {
  HAlg algebra;
  Bits x = 0;
  CanonCode code;  // dual with x marked
};

/// One member per catalog algebra with dual size 2..max_dual that is
/// generated by a single element; x is the least such element.
std::vector<OneGenerated> one_generated_family(int max_dual);

/// Star algebras of the first n family members (dual bound 5, raised as
/// needed up to 7). Throws InsufficientFamily past that.
WitnessReport roelcke_family(int n);

/// Fresh join-prime elements a_0..a_k over S, each one outside the algebra
/// generated by S and the earlier ones, with partial isomorphisms fixing S
/// and sending a_i to a_(i+1). The chain may grow.
WitnessReport infinite_orbit_witness(Chain& c, const std::vector<Bits>& s, int k);

/// Brute-force join-primality of a inside the subalgebra generated by gens.
bool join_prime_in(const HAlg& h, Bits a, const std::vector<Bits>& gens);

}  // namespace heytica

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heytica/exec.hpp"
#include "heytica/heyting.hpp"

namespace heytica {

/// B <- A -> C with both legs embeddings.
struct Diagram {
  HAlg a;
  HAlg b;
  HAlg c;
  Hom e_b;  // a -> b
  Hom e_c;  // a -> c
};

/// Throws ConstructionError unless both legs are embeddings out of `a`.
void validate_diagram(const Diagram& d);

struct Amalgam {
  HAlg result;
  Hom into_left;   // b -> result
  Hom into_right;  // c -> result
  /// Component pairs of each dual point of `result`.
  std::vector<std::pair<int, int>> pairs;
  bool fallback_used = false;

  Hom base_map(const Diagram& d) const { return compose(d.e_b, into_left); }
};

struct AmalgamChecks {
  bool commutes = false;
  bool independent = false;
  bool disjoint = false;
  bool ok() const { return commutes && independent && disjoint; }
};

/// Fibered product of the dual surjections, with every invariant checked.
/// Throws IndependenceFailure when neither the product nor the bounded
/// fallback search gives an independent amalgam; SizeError past 64 points.
/// With `verify` off only the projections are checked (surjective
/// p-morphisms, commuting square), for levels too big to list.
Amalgam superamalgamate(const Diagram& d, bool verify = true);
AmalgamChecks check_amalgam(const Diagram& d, const Amalgam& m);

/// Images of a Hom's source elements.
std::vector<Bits> image_elements(const Hom& f);

/// First pair (a, b) in S x T that is comparable with no element of U in
/// between.
std::optional<std::pair<Bits, Bits>> independence_counterexample(const std::vector<Bits>& s,
                                                                 const std::vector<Bits>& u,
                                                                 const std::vector<Bits>& t,
                                                                 Exec exec = Exec::Parallel);
bool check_independence(const HAlg& h, const std::vector<Bits>& s, const std::vector<Bits>& u,
                        const std::vector<Bits>& t, Exec exec = Exec::Parallel);

/// <AB> independent from <BC> over <B>.
bool indep_rel(const HAlg& h, const std::vector<Bits>& a, const std::vector<Bits>& b,
               const std::vector<Bits>& c);

/// Test hook: replaces the existential over U by a universal one.
void set_independence_fault(bool on);
bool independence_fault();

struct StationarityReport {
  bool stationary = false;
  std::size_t classes = 0;
  std::size_t amalgams = 0;         // generated independent amalgams seen
  std::size_t posets_searched = 0;
  std::size_t element_bound = 0;
  /// False when the search stopped at the second class.
  bool exhaustive = false;
  std::vector<CanonCode> class_codes;
};

/// Classifies, up to isomorphism over both legs, every algebra generated by
/// the images of a joint embedding of b and c (agreeing on a) that makes the
/// images independent over a. Searches algebras with at most `element_bound`
/// elements (0 means twice the fibered-product amalgam). Unless
/// `exhaustive`, stops as soon as a second class shows up.
StationarityReport stationarity_check(const Diagram& d, std::size_t element_bound = 0,
                                      bool exhaustive = false);

/// Cheaper stationarity verdict for diagrams too large to classify: the
/// exact search when its bound is at most `exact_bound` elements, else the
/// classes among sub-posets of the fibered product (stopping at two). A
/// second class there is a real counterexample; one class only is left
/// undecided.
struct StationarityProbe {
  bool exact = false;
  bool decided = false;
  bool stationary = false;
  std::size_t classes = 0;
};
StationarityProbe stationarity_probe(const Diagram& d, std::size_t exact_bound = 20);

/// Every diagram whose three duals are catalog posets with at most
/// `max_dual` points, over all pairs of embeddings.
std::vector<Diagram> all_diagrams(int max_dual);

}  // namespace heytica

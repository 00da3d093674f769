#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heytica/limit.hpp"

namespace heytica {

/// Small element sets A, B, C, D of one chain level.
struct AxiomConfig {
  int level = 0;
  std::vector<Bits> a, b, c, d;
};

/// Seeded configurations spread over the levels of `c` above the first.
/// Draws whose <ABCD> has more than `max_generated` elements are redrawn.
std::vector<AxiomConfig> sample_configs(const Chain& c, std::size_t count, std::uint64_t seed,
                                        std::size_t max_generated = 256);

struct AxiomTally {
  std::size_t checked = 0;  // premise held
  std::size_t failed = 0;
  std::vector<std::size_t> counterexamples;  // config indices, first few
};

struct AxiomReport {
  std::size_t configs = 0;
  /// Keys: existence, invariance, monotonicity, monotonicity_base, symmetry,
  /// transitivity, base_restriction, stationarity.
  std::map<std::string, AxiomTally> axioms;
  std::size_t existence_grown = 0;     // needed a new level on the fork
  std::size_t existence_local = 0;     // fork too big; grown over <ABC>
  std::size_t existence_deferred = 0;  // size bounds hit both ways
  std::size_t stationarity_diagrams = 0;
  std::size_t stationarity_undecided = 0;  // free configurations left open
  bool ok(const std::string& axiom) const;
};

/// Runs every axiom on every configuration. Stationarity is classified
/// over the base for each diagram <B> -> <AB>, <BC> that has a free
/// realization.
AxiomReport axiom_suite(const Chain& c, const std::vector<AxiomConfig>& configs);

}  // namespace heytica

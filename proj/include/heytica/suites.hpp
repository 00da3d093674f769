#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace heytica {

/// One checked claim inside a suite.
struct Clause {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteResult {
  int id = 0;
  std::string name;
  std::string scale;
  std::vector<Clause> clauses;
  bool ok() const;
};

struct SuiteOptions {
  /// Caps every dual-size bound below its default; 0 keeps the defaults.
  int bound = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 200;
};

struct SuiteInfo {
  int id;
  std::string name;
  double limit_seconds;
  std::function<SuiteResult(const SuiteOptions&)> run;
};

/// The fourteen suites in order, with their time limits.
const std::vector<SuiteInfo>& all_suites();

/// "suite:clause" pairs that are false at every scale we can reach, each
/// backed by an explicit counterexample in the tests.
const std::vector<std::string>& known_false_clauses();
bool is_known_false(const std::string& suite, const std::string& clause);

/// Runs the suite, turning any exception into a failed "completed" clause.
SuiteResult run_suite(const SuiteInfo& s, const SuiteOptions& o);

}  // namespace heytica

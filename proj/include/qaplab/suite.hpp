#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qaplab {

struct SuiteOptions {
  std::uint64_t seed = 1729;
  std::vector<int> sizes = {3, 4, 5, 6, 7};  // each must lie in [1, 10]
  int per_size = 20;            // instances per size for the relaxation sweep
  int mc_instances = 10;        // fixed instances for the randomized check
  int mc_seeds = 500;
  int best_of = 32;
  int matching_trials = 200;
  int cut_trials = 200;
  int vol_partitions = 20;
  int reduction_fixtures = 20;
  int concentration_trials = 100;
  int decomposition_trials = 100;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs every acceptance criterion, streaming one pass/fail line per
// criterion to `log` when given. Throws on out-of-guard sizes.
std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& opts,
                                                  std::ostream* log);

bool all_passed(const std::vector<CriterionResult>& results);

std::string suite_results_json(const std::vector<CriterionResult>& results);

}  // namespace qaplab

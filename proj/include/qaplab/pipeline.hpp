#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qaplab/graph.hpp"
#include "qaplab/lp.hpp"

namespace qaplab {

struct SolveRequest {
  std::string instance_path;  // mutually exclusive with generate
  std::string generate;       // "n:law:seed", law in {uniform01, integerK, sparseP}
  LpVariant variant = LpVariant::equality;
  bool run_randomized = false;
  bool run_derandomized = false;
  int rounds = 1;
  bool exact = false;
  std::uint64_t seed = 0;
  std::string export_lp_path;  // flag-gated LP text dump
};

GeneratorSpec parse_generator_spec(const std::string& text);

// Runs the requested pipeline and returns the machine-readable report.
// Ratio fields are recomputed from the raw values they cite; keys starting
// with "time_" carry wall-clock measurements and are excluded from
// determinism comparisons. report["ok"] is true iff every executed check
// passed.
nlohmann::json run_solve(const SolveRequest& req);

struct ReduceRequest {
  std::string labelcover_path;
  long long cloud_size = 0;  // <= 0: built-in schedule
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir;
  long long memory_budget = 0;  // <= 0: library default
};

nlohmann::json run_reduce(const ReduceRequest& req);

// Human-readable rendering of a report produced by the functions above.
std::string render_report(const nlohmann::json& report);

}  // namespace qaplab

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaplab/instance_io.hpp"
#include "qaplab/pipeline.hpp"
#include "qaplab/suite.hpp"

namespace {

long long env_memory_budget() {
  const char* v = std::getenv("QAPLAB_MEMORY_BUDGET");
  if (!v) return 0;
  return std::atoll(v);
}

void emit(const nlohmann::json& report, bool json_mode, const std::string& out_dir,
          const std::string& stem) {
  if (json_mode)
    std::cout << report.dump() << "\n";
  else
    std::cout << qaplab::render_report(report);
  if (!out_dir.empty())
    qaplab::write_text_file(out_dir + "/" + stem + ".json", report.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qaplab: maximum quadratic assignment solver laboratory"};
  app.require_subcommand(1);
  bool json_mode = false;
  std::string out_dir;
  app.add_flag("--json", json_mode, "emit line-delimited JSON records instead of tables");
  app.add_option("--out", out_dir, "directory for report and artifact files");

  auto* solve = app.add_subcommand("solve", "solve the relaxation and round it");
  qaplab::SolveRequest sreq;
  std::string variant = "equality", round = "none";
  solve->add_option("--instance", sreq.instance_path, "QAPLIB or JSON instance file");
  solve->add_option("--generate", sreq.generate, "random instance spec n:law:seed");
  solve->add_option("--variant", variant, "equality|inequality")
      ->check(CLI::IsMember({"equality", "inequality"}));
  solve->add_option("--round", round, "randomized|derandomized|both|none")
      ->check(CLI::IsMember({"randomized", "derandomized", "both", "none"}));
  solve->add_option("--rounds", sreq.rounds, "randomized restarts, best kept");
  solve->add_flag("--exact", sreq.exact, "brute-force optimum (guarded)");
  solve->add_option("--seed", sreq.seed, "master seed for all randomness");
  solve->add_option("--export-lp", sreq.export_lp_path, "write the relaxation in LP text format");

  auto* reduce = app.add_subcommand("reduce", "turn a label cover into an assignment instance");
  qaplab::ReduceRequest rreq;
  reduce->add_option("--labelcover", rreq.labelcover_path, "label cover JSON file")->required();
  reduce->add_option("--cloud-size", rreq.cloud_size, "cloud size N (<=0: built-in schedule)");
  reduce->add_option("--alpha", rreq.alpha, "pattern density in (0,1]");
  reduce->add_option("--seed", rreq.seed, "pattern seed");

  auto* suite = app.add_subcommand("suite", "run the acceptance suite");
  qaplab::SuiteOptions sopts;
  std::vector<int> sizes;
  suite->add_option("--seed", sopts.seed, "suite master seed");
  suite->add_option("--sizes", sizes, "instance sizes for the relaxation sweep");
  suite->add_option("--per-size", sopts.per_size, "instances per size");
  suite->add_option("--mc-seeds", sopts.mc_seeds, "seeds per instance for the randomized check");
  suite->add_option("--mc-instances", sopts.mc_instances, "instances for the randomized check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      sreq.variant = variant == "inequality" ? qaplab::LpVariant::inequality
                                             : qaplab::LpVariant::equality;
      sreq.run_randomized = round == "randomized" || round == "both";
      sreq.run_derandomized = round == "derandomized" || round == "both";
      nlohmann::json report = qaplab::run_solve(sreq);
      emit(report, json_mode, out_dir, "solve_report");
      return report["ok"].get<bool>() ? 0 : 1;
    }
    if (*reduce) {
      rreq.out_dir = out_dir;
      rreq.memory_budget = env_memory_budget();
      nlohmann::json report = qaplab::run_reduce(rreq);
      emit(report, json_mode, out_dir, "reduce_report");
      return report["ok"].get<bool>() ? 0 : 1;
    }
    if (*suite) {
      if (!sizes.empty()) sopts.sizes = sizes;
      std::ostringstream sink;
      std::ostream& log = json_mode ? static_cast<std::ostream&>(sink) : std::cout;
      auto results = qaplab::run_acceptance_suite(sopts, &log);
      if (json_mode) std::cout << qaplab::suite_results_json(results) << "\n";
      if (!out_dir.empty())
        qaplab::write_text_file(out_dir + "/suite_report.json",
                                qaplab::suite_results_json(results) + "\n");
      return qaplab::all_passed(results) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

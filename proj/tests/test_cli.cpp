#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "qaplab/instance_io.hpp"
#include "qaplab/labelcover.hpp"
#include "qaplab/pipeline.hpp"
#include "qaplab/suite.hpp"

using namespace qaplab;

namespace {

nlohmann::json strip_timing(nlohmann::json j) {
  std::vector<std::string> drop;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key().rfind("time_", 0) == 0) drop.push_back(it.key());
  for (const auto& k : drop) j.erase(k);
  return j;
}

std::string temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "qaplab_cli_test";
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("generator specs parse and reject garbage") {
  GeneratorSpec s = parse_generator_spec("5:integer3:42");
  CHECK(s.n == 5);
  CHECK(s.law == WeightLaw::integer);
  CHECK(s.param == 3.0);
  CHECK(s.seed == 42);
  GeneratorSpec u = parse_generator_spec("6:sparse0.5:1");
  CHECK(u.law == WeightLaw::sparse);
  CHECK(u.param == 0.5);
  CHECK_THROWS_AS(parse_generator_spec("6:gauss:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_generator_spec("6"), std::invalid_argument);
}

TEST_CASE("solve pipeline on a bundled fixture with --exact checks lp >= opt") {
  const std::string dir = temp_dir();
  const std::string path = dir + "/fixture4.json";
  save_instance_json(random_instance(4, WeightLaw::integer, 3, 99), path);

  SolveRequest req;
  req.instance_path = path;
  req.exact = true;
  req.run_derandomized = true;
  nlohmann::json report = run_solve(req);
  CHECK(report["ok"].get<bool>());
  CHECK(report["lp"]["equality"].get<double>() >=
        report["exact"]["opt_ordered"].get<double>() - 1e-6);
  bool found = false;
  for (const auto& c : report["checks"])
    if (c["name"] == "lp >= opt - 1e-6") found = c["pass"].get<bool>();
  CHECK(found);
}

TEST_CASE("solve reports are byte-identical modulo timing fields") {
  SolveRequest req;
  req.generate = "5:uniform01:3";
  req.run_randomized = true;
  req.run_derandomized = true;
  req.rounds = 4;
  req.seed = 1;
  nlohmann::json a = run_solve(req);
  nlohmann::json b = run_solve(req);
  CHECK(strip_timing(a).dump() == strip_timing(b).dump());
}

TEST_CASE("best-of-k dominates a single round through the pipeline") {
  SolveRequest one;
  one.generate = "5:integer3:8";
  one.run_randomized = true;
  one.rounds = 1;
  one.seed = 5;
  SolveRequest many = one;
  many.rounds = 32;
  CHECK(run_solve(many)["randomized"]["best"].get<double>() >=
        run_solve(one)["randomized"]["best"].get<double>());
}

TEST_CASE("lp export lands on disk when requested") {
  const std::string dir = temp_dir();
  SolveRequest req;
  req.generate = "3:integer2:4";
  req.export_lp_path = dir + "/export.lp";
  nlohmann::json report = run_solve(req);
  CHECK(report["ok"].get<bool>());
  CHECK(read_text_file(req.export_lp_path).find("Maximize") == 0);
}

TEST_CASE("reduce pipeline emits replayable files") {
  const std::string dir = temp_dir();
  LabelCoverInstance lc;
  lc.n = 2;
  lc.k = 2;
  lc.edges = {{0, 1}};
  lc.pi = {{{0, 0}, {1, 1}}};
  const std::string lc_path = dir + "/lc.json";
  write_text_file(lc_path, label_cover_to_json(lc));

  ReduceRequest req;
  req.labelcover_path = lc_path;
  req.cloud_size = 2;
  req.alpha = 1.0;
  req.seed = 3;
  req.out_dir = dir;
  nlohmann::json a = run_reduce(req);
  CHECK(a["ok"].get<bool>());
  CHECK(a["g_edges"].get<long long>() == 4);
  std::string inst_a = read_text_file(dir + "/reduced_instance.json");
  nlohmann::json b = run_reduce(req);
  CHECK(read_text_file(dir + "/reduced_instance.json") == inst_a);
  CHECK(strip_timing(a).dump() == strip_timing(b).dump());

  // the emitted instance solves with --exact to the full pattern count
  SolveRequest sreq;
  sreq.instance_path = dir + "/reduced_instance.json";
  sreq.exact = true;
  nlohmann::json solved = run_solve(sreq);
  CHECK(solved["exact"]["opt"].get<double>() == 4.0);
}

TEST_CASE("oversized reductions are refused through the pipeline") {
  const std::string dir = temp_dir();
  LabelCoverInstance lc;
  lc.n = 3;
  lc.k = 3;
  lc.edges = {{0, 1}, {1, 2}};
  lc.pi = {{{0, 0}}, {{1, 1}}};
  const std::string lc_path = dir + "/lc_big.json";
  write_text_file(lc_path, label_cover_to_json(lc));
  ReduceRequest req;
  req.labelcover_path = lc_path;
  req.cloud_size = 0;  // built-in schedule, far over budget
  req.seed = 1;
  CHECK_THROWS_AS(run_reduce(req), std::runtime_error);
}

TEST_CASE("suite guardrails refuse out-of-regime sizes") {
  SuiteOptions opts;
  opts.sizes = {3, 11};
  CHECK_THROWS_AS(run_acceptance_suite(opts, nullptr), std::invalid_argument);
}

TEST_CASE("shrunk suite smoke run produces one result per criterion") {
  SuiteOptions opts;
  opts.sizes = {3, 4};
  opts.per_size = 2;
  opts.mc_instances = 1;
  opts.mc_seeds = 40;
  opts.matching_trials = 10;
  opts.cut_trials = 10;
  opts.vol_partitions = 3;
  opts.reduction_fixtures = 4;
  opts.concentration_trials = 5;
  opts.decomposition_trials = 10;
  std::ostringstream log;
  auto results = run_acceptance_suite(opts, &log);
  CHECK(results.size() == 10);
  for (const auto& r : results) CHECK(r.pass);
  CHECK(log.str().find("criterion 1: PASS") != std::string::npos);
  nlohmann::json j = nlohmann::json::parse(suite_results_json(results));
  CHECK(j.size() == 10);
}

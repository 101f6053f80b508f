#include "qaplab/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "qaplab/instance_io.hpp"
#include "qaplab/labelcover.hpp"
#include "qaplab/oracle.hpp"
#include "qaplab/rounding.hpp"

namespace qaplab {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

void add_check(nlohmann::json& report, const std::string& name, bool pass) {
  report["checks"].push_back({{"name", name}, {"pass", pass}});
  if (!pass) report["ok"] = false;
}

}  // namespace

GeneratorSpec parse_generator_spec(const std::string& text) {
  // n:law:seed, e.g. 5:integer3:42 or 6:sparse0.5:1 or 4:uniform01:7
  GeneratorSpec spec;
  std::istringstream in(text);
  std::string n_part, law_part, seed_part;
  if (!std::getline(in, n_part, ':') || !std::getline(in, law_part, ':') ||
      !std::getline(in, seed_part))
    throw std::invalid_argument("generator spec must look like n:law:seed");
  spec.n = std::stoi(n_part);
  spec.seed = std::stoull(seed_part);
  if (law_part == "uniform01") {
    spec.law = WeightLaw::uniform01;
  } else if (law_part.rfind("integer", 0) == 0) {
    spec.law = WeightLaw::integer;
    spec.param = std::stod(law_part.substr(7));
  } else if (law_part.rfind("sparse", 0) == 0) {
    spec.law = WeightLaw::sparse;
    spec.param = std::stod(law_part.substr(6));
  } else {
    throw std::invalid_argument("unknown weight law: " + law_part);
  }
  return spec;
}

nlohmann::json run_solve(const SolveRequest& req) {
  nlohmann::json report;
  report["ok"] = true;
  report["checks"] = nlohmann::json::array();

  QapInstance inst;
  if (!req.instance_path.empty() && !req.generate.empty())
    throw std::invalid_argument("pass either an instance path or a generator spec");
  if (!req.instance_path.empty()) {
    std::vector<std::string> warnings;
    inst = load_instance(req.instance_path, &warnings);
    report["instance"] = req.instance_path;
    for (const auto& w : warnings) report["warnings"].push_back(w);
  } else if (!req.generate.empty()) {
    GeneratorSpec spec = parse_generator_spec(req.generate);
    inst = random_instance(spec);
    report["instance"] = "generate:" + req.generate;
  } else {
    throw std::invalid_argument("no instance given");
  }
  inst.validate();
  report["n_g"] = inst.g.n;
  report["n_h"] = inst.h.n;
  report["unweighted"] = inst.unweighted;
  if (inst.g.has_nonzero_diagonal() || inst.h.has_nonzero_diagonal())
    report["warnings"].push_back(
        "nonzero diagonal weights: rounding guarantees are calibrated for loop-free instances");

  // The relaxation and the rounding lane run on the ordered weighted
  // objective; a 0/1 instance is lifted to that view here.
  QapInstance lane = pad_to_square(inst);
  lane.unweighted = false;

  const std::string variant_name =
      req.variant == LpVariant::equality ? "equality" : "inequality";
  auto t0 = std::chrono::steady_clock::now();
  LpSolution sol = solve_relaxation(lane, req.variant);
  report["time_lp_ms"] = elapsed_ms(t0);
  report["lp"][variant_name] = sol.objective;
  report["lp_iterations"] = sol.stats.iterations;

  if (!req.export_lp_path.empty()) {
    write_text_file(req.export_lp_path, write_lp_text(lane, req.variant));
    report["lp_export"] = req.export_lp_path;
  }

  const double sqrt_n = std::sqrt(static_cast<double>(lane.g.n));
  double rand_best = -1.0, derand_value = -1.0;
  if (req.run_randomized) {
    if (req.variant != LpVariant::equality)
      throw std::invalid_argument("randomized rounding needs the equality variant");
    t0 = std::chrono::steady_clock::now();
    Assignment best = best_of_k_rounding(lane, sol, req.rounds, req.seed);
    report["time_randomized_ms"] = elapsed_ms(t0);
    rand_best = best.value;
    report["randomized"]["rounds"] = req.rounds;
    report["randomized"]["best"] = best.value;
    report["randomized"]["map"] = best.map;
    if (sol.objective > 1e-9)
      report["ratios"]["randomized_over_lp"] = rand_best / sol.objective;
  }
  if (req.run_derandomized) {
    t0 = std::chrono::steady_clock::now();
    Assignment a = derandomized_round(lane, sol);
    report["time_derandomized_ms"] = elapsed_ms(t0);
    derand_value = a.value;
    report["derandomized"]["value"] = a.value;
    report["derandomized"]["map"] = a.map;
    if (sol.objective > 1e-9) {
      report["ratios"]["derandomized_over_lp"] = derand_value / sol.objective;
      add_check(report, "derandomized_value >= lp/(1024 sqrt(n))",
                derand_value >= sol.objective / (1024.0 * sqrt_n) - 1e-9);
    }
  }

  if (req.exact) {
    t0 = std::chrono::steady_clock::now();
    ExactResult exact = brute_force_opt(inst);
    report["time_exact_ms"] = elapsed_ms(t0);
    report["exact"]["opt"] = exact.opt_value;
    report["exact"]["map"] = exact.opt_map;
    report["exact"]["enumerated"] = exact.enumerated;
    // The map realizes this much of the ordered objective; equal to opt for
    // weighted instances.
    QapInstance ordered = lane;
    std::vector<int> padded_map = exact.opt_map;
    {
      // extend with unused h-vertices for padded isolated g-vertices
      std::vector<char> used(lane.h.n, 0);
      for (int p : padded_map) used[p] = 1;
      for (int p = 0; padded_map.size() < static_cast<std::size_t>(lane.g.n); ++p)
        if (!used[p]) {
          padded_map.push_back(p);
          used[p] = 1;
        }
    }
    const double opt_ordered = value_qap(ordered, padded_map);
    report["exact"]["opt_ordered"] = opt_ordered;
    add_check(report, "lp >= opt - 1e-6", sol.objective >= opt_ordered - 1e-6);
    if (exact.opt_value > 1e-9) {
      if (rand_best >= 0)
        report["ratios"]["randomized_over_opt"] = rand_best / opt_ordered;
      if (derand_value >= 0)
        report["ratios"]["derandomized_over_opt"] = derand_value / opt_ordered;
    }
  }
  return report;
}

nlohmann::json run_reduce(const ReduceRequest& req) {
  nlohmann::json report;
  report["ok"] = true;
  report["checks"] = nlohmann::json::array();
  LabelCoverInstance lc = label_cover_from_json(read_text_file(req.labelcover_path));
  long long budget = req.memory_budget > 0 ? req.memory_budget : kDefaultReductionBudget;
  ReductionOutput out = reduce_to_qap(lc, req.cloud_size, req.alpha, req.seed, budget);

  report["labelcover"] = req.labelcover_path;
  report["cloud_size"] = out.params.cloud_size;
  report["alpha"] = out.params.alpha;
  report["seed"] = out.params.seed;
  report["n_g"] = out.qap.g.n;
  report["n_h"] = out.qap.h.n;
  report["g_edges"] = out.g_edge_count();
  EdgeCountReport ec = edge_count_check(out);
  report["edge_expectation"] = ec.expectation;
  add_check(report, "g_edges >= expectation/2", ec.pass);

  if (!req.out_dir.empty()) {
    std::filesystem::create_directories(req.out_dir);
    const std::string inst_path =
        (std::filesystem::path(req.out_dir) / "reduced_instance.json").string();
    const std::string side_path =
        (std::filesystem::path(req.out_dir) / "reduction_sidecar.json").string();
    save_instance_json(out.qap, inst_path);
    write_text_file(side_path, reduction_sidecar_json(out) + "\n");
    report["files"] = {inst_path, side_path};
  }
  return report;
}

std::string render_report(const nlohmann::json& report) {
  std::ostringstream out;
  out << "key                          value\n";
  out << "---------------------------  -----\n";
  std::function<void(const std::string&, const nlohmann::json&)> walk =
      [&](const std::string& prefix, const nlohmann::json& node) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
        } else if (node.is_array() && prefix != "checks") {
          if (node.size() > 16) {
            out << prefix << "  [" << node.size() << " entries]\n";
          } else {
            out << prefix << "  " << node.dump() << "\n";
          }
        } else if (prefix == "checks") {
          for (const auto& c : node)
            out << "check: " << c["name"].get<std::string>() << "  "
                << (c["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
        } else {
          out << prefix << "  " << node.dump() << "\n";
        }
      };
  walk("", report);
  return out.str();
}

}  // namespace qaplab

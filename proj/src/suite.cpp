#include "qaplab/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qaplab/lp.hpp"
#include "qaplab/matching.hpp"
#include "qaplab/oracle.hpp"
#include "qaplab/rng.hpp"
#include "qaplab/rounding.hpp"

namespace qaplab {

namespace {

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

GeneratorSpec law_cycle(int n, int idx, std::uint64_t seed) {
  switch (idx % 3) {
    case 0: return {n, WeightLaw::integer, 3.0, seed};
    case 1: return {n, WeightLaw::uniform01, 0.0, seed};
    default: return {n, WeightLaw::sparse, 0.5, seed};
  }
}

struct SweepEntry {
  QapInstance inst;
  LpSolution sol;
  double opt = 0.0;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// Fixture with relaxation optimum strictly above the integral optimum, found
// by seeded random search over sparse 5-vertex instances and frozen here:
// g is a disjoint edge plus triangle, h is a 5-cycle. The triangle cannot
// embed in the cycle, so the best map keeps 3 of g's edges (value 6) while
// the relaxation pays 8 — ratio 4/3. The suite re-derives both sides at run
// time; only the ratio threshold is pinned.
QapInstance gap_fixture_n5() {
  QapInstance inst;
  inst.g = WeightedGraph(5);
  inst.h = WeightedGraph(5);
  inst.g.set_edge(0, 1, 1.0);
  inst.g.set_edge(2, 3, 1.0);
  inst.g.set_edge(2, 4, 1.0);
  inst.g.set_edge(3, 4, 1.0);
  inst.h.set_edge(0, 1, 1.0);
  inst.h.set_edge(1, 4, 1.0);
  inst.h.set_edge(4, 2, 1.0);
  inst.h.set_edge(2, 3, 1.0);
  inst.h.set_edge(3, 0, 1.0);
  return inst;
}

LabelCoverInstance planted_label_cover(int n, int k, std::uint64_t seed,
                                       std::vector<int>* planted) {
  Rng rng(mix64(seed, 0x1c));
  LabelCoverInstance lc;
  lc.n = n;
  lc.k = k;
  std::vector<int> lambda(n);
  for (int& x : lambda) x = rng.below_int(k);
  for (int u = 0; u + 1 < n; ++u) lc.edges.emplace_back(u, u + 1);
  if (n >= 3 && rng.uniform01() < 0.5) lc.edges.emplace_back(0, n - 1);
  lc.pi.resize(lc.edges.size());
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    auto [u, v] = lc.edges[e];
    lc.pi[e].emplace_back(lambda[u], lambda[v]);
    int extras = rng.below_int(3);
    for (int t = 0; t < extras; ++t) {
      int x = rng.below_int(k), y = rng.below_int(k);
      bool dup = false;
      for (auto [a, b] : lc.pi[e]) dup |= (a == x && b == y);
      if (!dup) lc.pi[e].emplace_back(x, y);
    }
  }
  if (planted) *planted = lambda;
  return lc;
}

CriterionResult relaxation_validity(const SuiteOptions& o, std::vector<SweepEntry>& sweep) {
  Timer timer;
  CriterionResult r{1, "relaxation validity: lp >= opt - 1e-6 on the sweep", false, "", 0};
  int count = 0;
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
  int idx = 0;
  for (int n : o.sizes)
    for (int i = 0; i < o.per_size; ++i, ++idx) {
      SweepEntry e;
      e.inst = random_instance(law_cycle(n, idx, mix64(o.seed, 0xc1, idx)));
      e.sol = solve_relaxation(e.inst, LpVariant::equality);
      e.opt = brute_force_opt(e.inst).opt_value;
      worst = std::min(worst, e.sol.objective - e.opt);
      ok = ok && e.sol.objective >= e.opt - 1e-6;
      ++count;
      sweep.push_back(std::move(e));
    }
  r.pass = ok;
  r.detail = "instances=" + std::to_string(count) + " min(lp-opt)=" + fmt(worst);
  r.seconds = timer.seconds();
  return r;
}

CriterionResult derandomized_guarantee(const std::vector<SweepEntry>& sweep) {
  Timer timer;
  CriterionResult r{2, "derandomized rounding: value >= lp/(1024 sqrt(n)) and >= opt/(1024 sqrt(n))",
                    false, "", 0};
  bool ok = true;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& e : sweep) {
    Assignment a = derandomized_round(e.inst, e.sol);
    const double sn = std::sqrt(static_cast<double>(e.inst.g.n));
    ok = ok && a.value >= e.sol.objective / (1024.0 * sn) - 1e-9;
    ok = ok && a.value >= e.opt / (1024.0 * sn) - 1e-9;
    if (e.sol.objective > 1e-9)
      min_ratio = std::min(min_ratio, a.value * sn / e.sol.objective);
  }
  r.pass = ok;
  r.detail = "min value*sqrt(n)/lp=" + fmt(min_ratio) +
             " (bound requires >= 1/1024 = " + fmt(1.0 / 1024.0) + ")";
  r.seconds = timer.seconds();
  return r;
}

CriterionResult randomized_sanity(const SuiteOptions& o) {
  Timer timer;
  CriterionResult r{3, "randomized rounding: mean over seeds >= lp/(256 sqrt(6)), best-of-32 >= mean",
                    false, "", 0};
  bool ok = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < o.mc_instances; ++i) {
    QapInstance inst = random_instance(law_cycle(6, i, mix64(o.seed, 0xc3, i)));
    LpSolution sol = solve_relaxation(inst, LpVariant::equality);
    if (sol.objective <= 1e-9) continue;
    double sum = 0.0, best32 = -1.0;
    for (int s = 0; s < o.mc_seeds; ++s) {
      double v = randomized_round(inst, sol, mix64(o.seed, 0xd3, mix64(i, s))).value;
      sum += v;
      if (s < o.best_of) best32 = std::max(best32, v);
    }
    const double mean = sum / o.mc_seeds;
    const double threshold = sol.objective / (256.0 * std::sqrt(6.0));
    worst_margin = std::min(worst_margin, mean / threshold);
    ok = ok && mean >= threshold - 1e-9 && best32 >= mean - 1e-9;
  }
  r.pass = ok;
  r.detail = "instances=" + std::to_string(o.mc_instances) +
             " seeds=" + std::to_string(o.mc_seeds) + " min(mean/threshold)=" + fmt(worst_margin);
  r.seconds = timer.seconds();
  return r;
}

double enumerate_perfect(const CostMatrix& c) {
  std::vector<int> perm(c.cols);
  for (int i = 0; i < c.cols; ++i) perm[i] = i;
  double best = -std::numeric_limits<double>::infinity();
  do {
    double v = 0.0;
    for (int i = 0; i < c.rows; ++i) v += c.at(i, perm[i]);
    best = std::max(best, v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double enumerate_partial(const CostMatrix& c, int row, std::vector<char>& used) {
  if (row == c.rows) return 0.0;
  double best = enumerate_partial(c, row + 1, used);  // leave row unmatched
  for (int j = 0; j < c.cols; ++j) {
    if (used[j]) continue;
    used[j] = 1;
    best = std::max(best, c.at(row, j) + enumerate_partial(c, row + 1, used));
    used[j] = 0;
  }
  return best;
}

CriterionResult matching_oracle(const SuiteOptions& o) {
  Timer timer;
  CriterionResult r{4, "matching kernels agree exactly with exhaustive enumeration", false, "", 0};
  bool ok = true;
  for (int t = 0; t < o.matching_trials; ++t) {
    Rng rng(mix64(o.seed, 0xc4, t));
    CostMatrix c(6, 6);
    for (double& x : c.c) x = static_cast<double>(rng.below(100));
    ok = ok && max_weight_perfect_matching(c).value == enumerate_perfect(c);
  }
  for (int t = 0; t < o.matching_trials; ++t) {
    Rng rng(mix64(o.seed, 0x1c4, t));
    CostMatrix c(5, 7);
    for (double& x : c.c) x = static_cast<double>(rng.below(100)) - 50.0;
    std::vector<char> used(7, 0);
    ok = ok && max_weight_partial_matching(c).value == enumerate_partial(c, 0, used);
  }
  r.pass = ok;
  r.detail = "trials=" + std::to_string(2 * o.matching_trials) + " exact equality";
  r.seconds = timer.seconds();
  return r;
}

CriterionResult greedy_cut_invariants(const SuiteOptions& o) {
  Timer timer;
  CriterionResult r{5, "greedy cut >= half total weight; greedy dicut >= quarter total weight",
                    false, "", 0};
  bool ok = true;
  for (int t = 0; t < o.cut_trials; ++t) {
    Rng rng(mix64(o.seed, 0xc5, t));
    const int n = 2 + rng.below_int(11);
    WeightedGraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        g.set_edge(u, v, static_cast<double>(rng.below(10)));
    CutPartition cut = greedy_max_cut(g);
    long long total = 0, cutw = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) total += static_cast<long long>(g.at(u, v));
    std::vector<char> in_left(n, 0);
    for (int u : cut.left) in_left[u] = 1;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (in_left[u] != in_left[v]) cutw += static_cast<long long>(g.at(u, v));
    ok = ok && 2 * cutw >= total && cut.cut_value == static_cast<double>(cutw);

    DirectedGraph d(n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (p != q) d.at(p, q) = static_cast<double>(rng.below(10));
    CutPartition dicut = greedy_max_dicut(d);
    long long dtotal = 0, dval = 0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (p != q) dtotal += static_cast<long long>(d.at(p, q));
    std::vector<char> dleft(n, 0);
    for (int p : dicut.left) dleft[p] = 1;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (p != q && dleft[p] && !dleft[q]) dval += static_cast<long long>(d.at(p, q));
    ok = ok && 4 * dval >= dtotal && dicut.cut_value == static_cast<double>(dval);
  }
  r.pass = ok;
  r.detail = "graphs=" + std::to_string(o.cut_trials) + " digraphs=" + std::to_string(o.cut_trials) +
             " zero violations required";
  r.seconds = timer.seconds();
  return r;
}

CriterionResult vol_partition_identity(const SuiteOptions& o) {
  Timer timer;
  CriterionResult r{6, "volume partition identity: sum vol(S_i, T_i) = 2 lp*", false, "", 0};
  bool ok = true;
  double worst = 0.0;
  int done = 0;
  const int sizes[3] = {4, 5, 6};
  for (int si = 0; si < 3 && done < o.vol_partitions; ++si) {
    QapInstance inst = random_instance(law_cycle(sizes[si], si, mix64(o.seed, 0xc6, si)));
    LpSolution sol = solve_relaxation(inst, LpVariant::equality);
    const int n = inst.g.n;
    for (int t = 0; t < (o.vol_partitions + 2) / 3 && done < o.vol_partitions; ++t, ++done) {
      Rng rng(mix64(o.seed, 0xd6, mix64(si, t)));
      const int blocks = 1 + rng.below_int(4);
      std::vector<std::vector<int>> s(blocks), tt(blocks);
      for (int u = 0; u < n; ++u) s[rng.below_int(blocks)].push_back(u);
      for (int p = 0; p < n; ++p) tt[rng.below_int(blocks)].push_back(p);
      double sum = 0.0;
      for (int b = 0; b < blocks; ++b) sum += vol_lp(inst, sol, s[b], tt[b]);
      worst = std::max(worst, std::abs(sum - 2.0 * sol.objective));
      ok = ok && std::abs(sum - 2.0 * sol.objective) <= 1e-6;
    }
  }
  r.pass = ok;
  r.detail = "partitions=" + std::to_string(done) + " max |sum - 2lp*|=" + fmt(worst);
  r.seconds = timer.seconds();
  return r;
}

CriterionResult reduction_completeness(const SuiteOptions& o) {
  Timer timer;
  CriterionResult r{7, "reduction completeness: canonical map of a satisfying labeling scores |E~|",
                    false, "", 0};
  bool ok = true;
  int confirmed_exact = 0;
  for (int i = 0; i < o.reduction_fixtures; ++i) {
    const int n = 2 + i % 3;          // 2..4
    const int k = 1 + i % 3;          // 1..3
    const long long cloud = 1 + i % 4;  // 1..4
    const double alpha = (i % 2 == 0) ? 1.0 : 0.5;
    std::vector<int> lambda;
    LabelCoverInstance lc = planted_label_cover(n, k, mix64(o.seed, 0xc7, i), &lambda);
    ReductionOutput out = reduce_to_qap(lc, cloud, alpha, mix64(o.seed, 0xd7, i));
    Labeling lab{lambda};
    if (value_label_cover(lc, lab) != 1.0) {
      ok = false;
      continue;
    }
    Assignment canon = canonical_map(out, lab);
    ok = ok && canon.value == static_cast<double>(out.g_edge_count());
    long long maps = count_injective_maps(out.qap.g.n, out.qap.h.n);
    if (maps >= 0 && maps <= 2'000'000) {
      ExactResult exact = brute_force_opt(out.qap, 2'000'000);
      ok = ok && exact.opt_value == canon.value;
      ++confirmed_exact;
    }
  }
  r.pass = ok;
  r.detail = "fixtures=" + std::to_string(o.reduction_fixtures) +
             " oracle-confirmed=" + std::to_string(confirmed_exact) + " exact equality";
  r.seconds = timer.seconds();
  return r;
}

CriterionResult edge_concentration(const SuiteOptions& o) {
  Timer timer;
  CriterionResult r{8, "edge-count concentration: |E~| >= alpha |E| N^2 / 2 at rate >= 99%",
                    false, "", 0};
  LabelCoverInstance lc;
  lc.n = 3;
  lc.k = 1;
  lc.edges = {{0, 1}, {1, 2}, {0, 2}};
  lc.pi = {{{0, 0}}, {{0, 0}}, {{0, 0}}};
  int passes = 0;
  for (int t = 0; t < o.concentration_trials; ++t) {
    ReductionOutput out = reduce_to_qap(lc, 50, 0.2, mix64(o.seed, 0xc8, t));
    if (edge_count_check(out).pass) ++passes;
  }
  r.pass = passes * 100 >= 99 * o.concentration_trials;
  r.detail = "passes=" + std::to_string(passes) + "/" + std::to_string(o.concentration_trials);
  r.seconds = timer.seconds();
  return r;
}

CriterionResult decomposition_reconstruction(const SuiteOptions& o) {
  Timer timer;
  CriterionResult r{9, "fractional matching decomposition: exact support, reconstruction within 1e-6",
                    false, "", 0};
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < o.decomposition_trials; ++t) {
    Rng rng(mix64(o.seed, 0xc9, t));
    FractionalMatching z(4, 5);
    for (double& x : z.z) x = rng.uniform01() * rng.uniform01();
    double cap = 0.0;
    for (int i = 0; i < 4; ++i) {
      double s = 0.0;
      for (int j = 0; j < 5; ++j) s += z.at(i, j);
      cap = std::max(cap, s);
    }
    for (int j = 0; j < 5; ++j) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i) s += z.at(i, j);
      cap = std::max(cap, s);
    }
    const double target = (t % 3 == 0) ? 1.0 : 0.45 + 0.5 * rng.uniform01();
    if (cap > 0.0)
      for (double& x : z.z) x *= target / cap;

    auto parts = decompose_fractional_matching(z);
    double total = 0.0;
    std::vector<double> recon(z.z.size(), 0.0);
    int nnz = 0;
    for (double x : z.z)
      if (x > 1e-12) ++nnz;
    for (const auto& p : parts) {
      total += p.weight;
      for (int i = 0; i < 4; ++i)
        if (p.match[i] >= 0) {
          ok = ok && z.at(i, p.match[i]) > 0.0;  // support check, exact
          recon[static_cast<std::size_t>(i) * 5 + p.match[i]] += p.weight;
        }
    }
    ok = ok && total <= 1.0 + 1e-9;
    ok = ok && static_cast<int>(parts.size()) <= nnz;
    for (std::size_t c = 0; c < recon.size(); ++c)
      worst = std::max(worst, std::abs(recon[c] - z.z[c]));
    ok = ok && worst <= 1e-6;
  }
  r.pass = ok;
  r.detail = "matrices=" + std::to_string(o.decomposition_trials) +
             " max reconstruction error=" + fmt(worst);
  r.seconds = timer.seconds();
  return r;
}

CriterionResult gap_fixture(const SuiteOptions&) {
  Timer timer;
  CriterionResult r{10, "recorded integrality-gap fixture at n=5 exceeds 1.05", false, "", 0};
  GapResult gap = integrality_gap(gap_fixture_n5());
  r.pass = !gap.infinite && gap.gap > 1.05;
  r.detail = "gap=" + fmt(gap.gap) + " (lp*=" + fmt(gap.lp_star) + ", opt=" + fmt(gap.opt) +
             "); the asymptotic hardness factor and gap families are not reproducible at "
             "desk scale and are represented by this fixture plus criteria 1-9";
  r.seconds = timer.seconds();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& opts,
                                                  std::ostream* log) {
  for (int n : opts.sizes)
    if (n < 1 || n > 10)
      throw std::invalid_argument("suite: size " + std::to_string(n) +
                                  " is outside the supported exact regime [1, 10]");

  std::vector<CriterionResult> results;
  auto emit = [&](CriterionResult r) {
    if (log)
      (*log) << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " — " << r.name
             << " [" << r.detail << "] (" << fmt(r.seconds) << "s)\n";
    results.push_back(std::move(r));
  };

  std::vector<SweepEntry> sweep;
  emit(relaxation_validity(opts, sweep));
  emit(derandomized_guarantee(sweep));
  emit(randomized_sanity(opts));
  emit(matching_oracle(opts));
  emit(greedy_cut_invariants(opts));
  emit(vol_partition_identity(opts));
  emit(reduction_completeness(opts));
  emit(edge_concentration(opts));
  emit(decomposition_reconstruction(opts));
  emit(gap_fixture(opts));
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string suite_results_json(const std::vector<CriterionResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : results)
    j.push_back({{"id", r.id},
                 {"name", r.name},
                 {"pass", r.pass},
                 {"detail", r.detail},
                 {"time_seconds", r.seconds}});
  return j.dump(2);
}

}  // namespace qaplab

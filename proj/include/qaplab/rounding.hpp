#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qaplab/graph.hpp"
#include "qaplab/lp.hpp"

namespace qaplab {

// Per-vertex split of the LP objective mass into a heavy part (the other
// endpoint is among the ceil(sqrt(n)) strongest neighbors) and a light part.
struct HeavyLightSplit {
  std::vector<std::vector<int>> heavy_sets;  // W_u, sorted ascending
  double lp_heavy = 0.0;
  double lp_light = 0.0;
};

HeavyLightSplit heavy_light_split(const QapInstance& inst, const LpSolution& sol);

struct StarDecomposition {
  std::vector<int> center_of;                            // l(v) for every v
  std::vector<std::pair<int, std::vector<int>>> stars;   // (center, leaves)
};

// Groups the requested leaf candidates by their strongest LP partner; ties
// break toward the lowest center index.
StarDecomposition build_stars(const QapInstance& inst, const LpSolution& sol,
                              const std::vector<int>& r_g);

struct CutPartition {
  std::vector<int> left, right;
  double cut_value = 0.0;
};

// Greedy streaming cut: each vertex joins the side opposite its currently
// heavier attachment. Cut weight >= half the total edge weight.
CutPartition greedy_max_cut(const WeightedGraph& g);

struct DirectedGraph {
  int n = 0;
  std::vector<double> w;  // w[p*n+q] = weight of p -> q; diagonal ignored

  DirectedGraph() = default;
  explicit DirectedGraph(int n_) : n(n_), w(static_cast<std::size_t>(n_) * n_, 0.0) {}
  double& at(int p, int q) { return w[static_cast<std::size_t>(p) * n + q]; }
  double at(int p, int q) const { return w[static_cast<std::size_t>(p) * n + q]; }
};

// Greedy cut on the symmetrized weights, then oriented toward the heavier
// direction. Value >= a quarter of the total directed weight.
CutPartition greedy_max_dicut(const DirectedGraph& d);

// LP mass touching the vertex sets: sum of all objective terms whose first
// g-slot lies in s plus those whose first h-slot lies in t. Partitions of
// both sides sum to exactly twice the LP objective.
double vol_lp(const QapInstance& inst, const LpSolution& sol,
              const std::vector<int>& s, const std::vector<int>& t);

// First bijection maximizes the mean contribution against a uniformly random
// partner map (a rank-one matching), the second best-responds to it.
std::pair<std::vector<int>, std::vector<int>> case1_bijections(
    const QapInstance& inst, const LpSolution& sol);

struct StarChoice {
  int center = -1;
  int center_image = -1;
  std::vector<std::pair<int, int>> leaves;  // (g vertex, h image)
  double penalized = 0.0;                   // 2*profit - penalty * footprint volume
  double profit = 0.0;                      // one-orientation star value
};

// Searches every (center, image) choice, solving a penalized partial
// matching for the leaves, and returns the best star found.
StarChoice find_star_and_map(const QapInstance& inst, const LpSolution& sol,
                             double penalty_coeff = 1.0 / 256.0);

// Four-step randomized rounding of an equality-variant solution; pure
// function of (inst, sol, seed).
Assignment randomized_round(const QapInstance& inst, const LpSolution& sol,
                            std::uint64_t seed);

// Max over k independently seeded randomized roundings.
Assignment best_of_k_rounding(const QapInstance& inst, const LpSolution& sol,
                              int k, std::uint64_t seed);

struct DerandOptions {
  // Coefficient of the volume penalty inside the star search; the certified
  // output bound LP*/(1024 sqrt(n)) is calibrated to 1/256.
  double penalty_coeff = 1.0 / 256.0;
};

// Deterministic rounding for a solution of either variant: repeatedly either
// finishes with a pair of cut-oriented bijections (light-dominated case) or
// extracts one star and recurses on the restricted solution without
// re-solving the LP.
Assignment derandomized_round(const QapInstance& inst, const LpSolution& sol,
                              const DerandOptions& opts = {});

}  // namespace qaplab

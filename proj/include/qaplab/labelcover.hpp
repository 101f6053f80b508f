#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qaplab/graph.hpp"

namespace qaplab {

struct LabelCoverInstance {
  int n = 0;  // constraint-graph vertices
  int k = 0;  // alphabet size
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::pair<int, int>>> pi;  // accepted pairs per edge

  void validate() const;
};

struct Labeling {
  std::vector<int> lambda;
};

// Fraction of edge constraints satisfied by the labeling.
double value_label_cover(const LabelCoverInstance& lc, const Labeling& lab);

struct ReductionParams {
  long long cloud_size = 0;  // N
  double alpha = 0.0;
  std::uint64_t seed = 0;
};

// Vertex encodings used by the reduction and its reports:
//   g-side cloud vertex (u, i)    -> u * N + i
//   h-side label vertex (u, x, i) -> (u * k + x) * N + i
struct ReductionOutput {
  QapInstance qap;  // unweighted
  LabelCoverInstance lc;
  ReductionParams params;
  std::vector<std::vector<std::pair<int, int>>> edge_sets;  // sampled pairs per lc edge

  long long g_edge_count() const;
  int g_vertex(int u, int i) const;
  int h_vertex(int u, int x, int i) const;
};

constexpr long long kDefaultReductionBudget = 10'000'000;  // vertex-squared cells

// Blows each vertex into a cloud of size N and connects clouds by seeded
// random bipartite patterns; the h side replicates each pattern once per
// accepted label pair. Pass cloud_size <= 0 / alpha <= 0 to use the built-in
// parameter schedule (which is far beyond the memory budget for any
// nontrivial instance, and is refused with the required size named).
ReductionOutput reduce_to_qap(const LabelCoverInstance& lc, long long cloud_size,
                              double alpha, std::uint64_t seed,
                              long long memory_budget = kDefaultReductionBudget);

// The labeling-induced map (u,i) -> (u, lambda(u), i). If the labeling
// satisfies every constraint this map lands every g-edge on an h-edge.
Assignment canonical_map(const ReductionOutput& out, const Labeling& lab);

struct EdgeCountReport {
  long long edges = 0;
  double expectation = 0.0;  // alpha * |E| * N^2
  bool pass = false;         // edges >= expectation / 2
};

EdgeCountReport edge_count_check(const ReductionOutput& out);

struct SoundnessReport {
  double best_random = 0.0;     // best of `budget` random injective maps
  long long samples = 0;
  double best_canonical = 0.0;  // best canonical map found
  bool canonical_exhaustive = false;  // true when all k^n labelings were tried
  double opt_lc = 0.0;
  double bound = 0.0;  // alpha * |E| * N^2 * (opt_lc + 2 alpha)
  bool bound_violated = false;
  double exact_opt = 0.0;
  bool exact_opt_known = false;
};

// Empirical probe of the reduction's soundness: samples random injective
// maps, sweeps canonical maps (exhaustively when the labeling space is
// small), and compares against the expected-value bound. Violations are
// reported, not thrown.
SoundnessReport soundness_probe(const ReductionOutput& out, long long budget,
                                std::uint64_t seed);

// JSON: {n, k, edges: [[u,v],...], pi: [[[x,y],...],...]}
std::string label_cover_to_json(const LabelCoverInstance& lc);
LabelCoverInstance label_cover_from_json(const std::string& text);

// Sidecar written next to reduced instances: parameters and per-edge pattern
// sizes.
std::string reduction_sidecar_json(const ReductionOutput& out);

}  // namespace qaplab

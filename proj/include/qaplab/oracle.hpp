#pragma once

#include <vector>

#include "qaplab/graph.hpp"
#include "qaplab/labelcover.hpp"

namespace qaplab {

struct ExactResult {
  double opt_value = 0.0;
  std::vector<int> opt_map;
  long long enumerated = 0;  // n_h! / (n_h - n_g)!
};

// Number of injective maps, or -1 on overflow past ~9e18.
long long count_injective_maps(int n_g, int n_h);

// Exhaustive maximum over injective maps in lexicographic order; the first
// optimum in that order is returned. Refuses when the enumeration count
// exceeds the guard.
ExactResult brute_force_opt(const QapInstance& inst,
                            long long guard = 10'000'000);

struct LcExactResult {
  double opt_fraction = 0.0;
  Labeling labeling;
  long long enumerated = 0;  // k^n
};

LcExactResult brute_force_label_cover(const LabelCoverInstance& lc,
                                      long long guard = 10'000'000);

struct GapResult {
  double gap = 1.0;
  double lp_star = 0.0;
  double opt = 0.0;
  bool infinite = false;  // opt == 0 while lp_star > 0
};

// LP optimum over brute-force optimum, both evaluated on the ordered
// weighted objective (the unweighted flag is ignored so the two sides are
// comparable).
GapResult integrality_gap(const QapInstance& inst);

}  // namespace qaplab

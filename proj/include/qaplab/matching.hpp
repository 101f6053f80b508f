#pragma once

#include <cstdint>
#include <vector>

namespace qaplab {

struct CostMatrix {
  int rows = 0, cols = 0;
  std::vector<double> c;  // rows*cols, row-major; negative entries allowed

  CostMatrix() = default;
  CostMatrix(int r, int c_) : rows(r), cols(c_), c(static_cast<std::size_t>(r) * c_, 0.0) {}
  double& at(int i, int j) { return c[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return c[static_cast<std::size_t>(i) * cols + j]; }
};

struct PerfectMatchingResult {
  std::vector<int> match;  // match[row] = col, a permutation
  double value = 0.0;
};

// Maximum-weight perfect matching on a square cost matrix, Hungarian
// (shortest augmenting path) in O(n^3). Exact on integer inputs: only
// additions, subtractions and comparisons are used.
PerfectMatchingResult max_weight_perfect_matching(const CostMatrix& cost);

struct PartialMatchingResult {
  std::vector<int> match;  // match[row] = col or -1 for unmatched
  double value = 0.0;      // always >= 0: the empty matching is feasible
};

// Maximum-weight partial matching: unmatched rows contribute 0, so no pair
// with negative marginal value appears in an optimum. Reduced to a perfect
// matching by padding with zero-cost slack vertices.
PartialMatchingResult max_weight_partial_matching(const CostMatrix& cost);

struct FractionalMatching {
  int rows = 0, cols = 0;
  std::vector<double> z;  // rows*cols in [0,1], row and column sums <= 1

  FractionalMatching() = default;
  FractionalMatching(int r, int c) : rows(r), cols(c), z(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int i, int j) { return z[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return z[static_cast<std::size_t>(i) * cols + j]; }
};

struct WeightedMatching {
  double weight = 0.0;
  std::vector<int> match;  // match[row] = col or -1
};

// Writes a doubly substochastic matrix as a convex combination of integral
// partial matchings: sum of weights <= 1 (the residual is the empty
// matching), every matching is supported on supp(z), reconstruction is exact
// up to roundoff, and at most nnz(z) matchings are returned.
std::vector<WeightedMatching> decompose_fractional_matching(const FractionalMatching& z);

// Draws one matching with probability proportional to its weight; the
// residual probability yields the empty matching (all -1).
std::vector<int> sample_matching(const std::vector<WeightedMatching>& parts,
                                 int rows, std::uint64_t seed);

}  // namespace qaplab

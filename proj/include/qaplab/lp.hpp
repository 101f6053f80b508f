#pragma once

#include <string>
#include <vector>

#include "qaplab/graph.hpp"
#include "qaplab/ipm.hpp"

namespace qaplab {

enum class LpVariant { equality, inequality };

// Pair variables stored once per unordered pair of (vertex, image) slots, so
// the exchange symmetry y(u,p,v,q) == y(v,q,u,p) holds structurally.
class FoldedY {
 public:
  FoldedY() = default;
  explicit FoldedY(int n)
      : n_(n), m_(n * n), v_(static_cast<std::size_t>(m_) * (m_ + 1) / 2, 0.0) {}

  int n() const { return n_; }
  double at(int u, int p, int v, int q) const { return v_[idx(u * n_ + p, v * n_ + q)]; }
  double& ref(int u, int p, int v, int q) { return v_[idx(u * n_ + p, v * n_ + q)]; }
  double pair_at(int a, int b) const { return v_[idx(a, b)]; }
  double& pair_ref(int a, int b) { return v_[idx(a, b)]; }
  std::size_t size() const { return v_.size(); }

 private:
  std::size_t idx(int a, int b) const {
    if (a > b) std::swap(a, b);
    return static_cast<std::size_t>(a) * m_ - static_cast<std::size_t>(a) * (a - 1) / 2 +
           (b - a);
  }
  int n_ = 0, m_ = 0;
  std::vector<double> v_;
};

struct LpSolution {
  LpVariant variant = LpVariant::equality;
  int n = 0;
  std::vector<double> x;  // n*n assignment marginals
  FoldedY y;
  double objective = 0.0;
  IpmStats stats;

  double x_at(int u, int p) const { return x[static_cast<std::size_t>(u) * n + p]; }
  double& x_ref(int u, int p) { return x[static_cast<std::size_t>(u) * n + p]; }
};

// The pairwise linearization of the instance. Equality variant: assignment
// rows and pair-consistency rows are equations; inequality variant relaxes
// all four families to '<=', which stays feasible after vertices are removed.
struct AjLp {
  LpVariant variant = LpVariant::equality;
  int n = 0;
  LpProblem problem;

  int x_var(int u, int p) const { return u * n + p; }
  int num_x_vars() const { return n * n; }
};

// Requires a square instance (use pad_to_square first).
AjLp build_aj_lp(const QapInstance& inst, LpVariant variant);

LpSolution solve_lp(const AjLp& lp);
LpSolution solve_relaxation(const QapInstance& inst, LpVariant variant);

// Objective of (x, y) under the instance weights: the full ordered-pair sum
// of w_g(u,v) * w_h(p,q) * y(u,p,v,q).
double lp_objective(const QapInstance& inst, const FoldedY& y);

// Zeroes every entry touching a removed vertex and recomputes the objective.
// The result is feasible for the inequality variant on the reduced instance.
LpSolution restrict_solution(const QapInstance& inst, const LpSolution& sol,
                             const std::vector<int>& keep_g,
                             const std::vector<int>& keep_h);

// Text export in the usual LP interchange layout (objective, constraints,
// bounds), for cross-checks against external solvers.
std::string write_lp_text(const QapInstance& inst, LpVariant variant);

}  // namespace qaplab

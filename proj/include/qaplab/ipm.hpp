#pragma once

#include <vector>

namespace qaplab {

// max obj'x  s.t.  A x {=,<=} rhs, x >= 0, with rhs >= 0 componentwise.
// Columns in compressed form; [0,1] variable bounds must be implied by the
// constraints themselves (true for the relaxations built here).
struct LpProblem {
  int num_rows = 0;
  int num_vars = 0;
  std::vector<int> col_start;  // size num_vars + 1
  std::vector<int> col_row;
  std::vector<double> col_val;
  std::vector<double> obj;         // size num_vars
  std::vector<double> rhs;         // size num_rows, nonnegative
  std::vector<char> row_equality;  // 1 for '=', 0 for '<='
};

struct IpmOptions {
  double feas_tol = 1e-9;     // relative primal/dual residual target
  double gap_tol = 1e-10;     // relative complementarity target
  double accept_tol = 1e-7;   // hard ceiling before the solve is rejected
  int max_iterations = 200;
};

struct IpmStats {
  long long iterations = 0;
  double primal_residual = 0.0;  // absolute, infinity norm
  double dual_residual = 0.0;
  double duality_gap = 0.0;      // |obj'x - rhs'y|, the optimality certificate
};

struct IpmResult {
  std::vector<double> x;  // size num_vars
  double objective = 0.0;
  IpmStats stats;
};

// Mehrotra predictor-corrector interior-point solve with dense normal
// equations. Deterministic; certifies optimality by the duality gap and
// throws if the certificate cannot be met. Handles the rank-deficient rows
// of the relaxations here via a small diagonal regularization.
IpmResult solve_ipm(const LpProblem& prob, const IpmOptions& opt = {});

}  // namespace qaplab

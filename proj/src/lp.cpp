#include "qaplab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qaplab {

namespace {

// Variable layout: x(u,p) at u*n+p, then one variable per unordered pair
// {(u,p),(v,q)} of slots, indexed by the upper triangle (a <= b) of the
// n^2 x n^2 slot grid.
struct VarLayout {
  int n, m;  // m = n*n
  explicit VarLayout(int n_) : n(n_), m(n_ * n_) {}
  int x(int u, int p) const { return u * n + p; }
  int y_pair(int a, int b) const {
    if (a > b) std::swap(a, b);
    return m + a * m - a * (a - 1) / 2 + (b - a);
  }
  int y(int u, int p, int v, int q) const { return y_pair(u * n + p, v * n + q); }
  int total() const { return m + m * (m + 1) / 2; }
};

// Row layout: assignment rows for g then h, then the two pair-consistency
// families indexed (v,p,q) and (u,v,q).
struct RowLayout {
  int n;
  explicit RowLayout(int n_) : n(n_) {}
  int g_assign(int u) const { return u; }
  int h_assign(int p) const { return n + p; }
  int sum_u(int v, int p, int q) const { return 2 * n + (v * n + p) * n + q; }
  int sum_p(int u, int v, int q) const { return 2 * n + n * n * n + (u * n + v) * n + q; }
  int total() const { return 2 * n + 2 * n * n * n; }
};

}  // namespace

AjLp build_aj_lp(const QapInstance& inst, LpVariant variant) {
  inst.validate();
  if (inst.g.n != inst.h.n)
    throw std::invalid_argument("build_aj_lp: instance must be square (pad g first)");
  const int n = inst.g.n;
  const VarLayout var(n);
  const RowLayout row(n);

  AjLp lp;
  lp.variant = variant;
  lp.n = n;
  LpProblem& p = lp.problem;
  p.num_rows = row.total();
  p.num_vars = var.total();
  p.rhs.assign(p.num_rows, 0.0);
  for (int u = 0; u < n; ++u) p.rhs[row.g_assign(u)] = 1.0;
  for (int q = 0; q < n; ++q) p.rhs[row.h_assign(q)] = 1.0;
  p.row_equality.assign(p.num_rows, variant == LpVariant::equality ? 1 : 0);

  p.obj.assign(p.num_vars, 0.0);
  p.col_start.assign(p.num_vars + 1, 0);

  // Column construction in variable order; every coefficient is +-1.
  std::vector<int> rows;
  std::vector<double> vals;
  rows.reserve(8);

  auto flush = [&](int j, std::vector<int>& rbuf, std::vector<double>& vbuf) {
    p.col_start[j + 1] = p.col_start[j] + static_cast<int>(rbuf.size());
    p.col_row.insert(p.col_row.end(), rbuf.begin(), rbuf.end());
    p.col_val.insert(p.col_val.end(), vbuf.begin(), vbuf.end());
    rbuf.clear();
    vbuf.clear();
  };

  std::vector<int> rbuf;
  std::vector<double> vbuf;
  for (int u = 0; u < n; ++u)
    for (int q = 0; q < n; ++q) {
      const int j = var.x(u, q);
      rbuf.push_back(row.g_assign(u));
      vbuf.push_back(1.0);
      rbuf.push_back(row.h_assign(q));
      vbuf.push_back(1.0);
      for (int pp = 0; pp < n; ++pp) {
        rbuf.push_back(row.sum_u(u, pp, q));
        vbuf.push_back(-1.0);
      }
      for (int uu = 0; uu < n; ++uu) {
        rbuf.push_back(row.sum_p(uu, u, q));
        vbuf.push_back(-1.0);
      }
      flush(j, rbuf, vbuf);
    }

  const int m = n * n;
  for (int a = 0; a < m; ++a) {
    const int u = a / n, pp = a % n;
    for (int b = a; b < m; ++b) {
      const int v = b / n, q = b % n;
      const int j = var.y_pair(a, b);
      if (a == b) {
        // y(u,p,u,p): one appearance in each family.
        rbuf.push_back(row.sum_u(u, pp, pp));
        vbuf.push_back(1.0);
        rbuf.push_back(row.sum_p(u, u, pp));
        vbuf.push_back(1.0);
        p.obj[j] = inst.g.at(u, u) * inst.h.at(pp, pp);
      } else {
        rbuf.push_back(row.sum_u(v, pp, q));
        vbuf.push_back(1.0);
        rbuf.push_back(row.sum_u(u, q, pp));
        vbuf.push_back(1.0);
        rbuf.push_back(row.sum_p(u, v, q));
        vbuf.push_back(1.0);
        rbuf.push_back(row.sum_p(v, u, pp));
        vbuf.push_back(1.0);
        // Both orderings of the pair contribute to the objective.
        p.obj[j] = 2.0 * inst.g.at(u, v) * inst.h.at(pp, q);
      }
      flush(j, rbuf, vbuf);
    }
  }
  return lp;
}

LpSolution solve_lp(const AjLp& lp) {
  IpmResult sr = solve_ipm(lp.problem);
  const int n = lp.n;
  LpSolution sol;
  sol.variant = lp.variant;
  sol.n = n;
  sol.x.assign(static_cast<std::size_t>(n) * n, 0.0);
  sol.y = FoldedY(n);
  sol.stats = sr.stats;
  const VarLayout var(n);
  for (int u = 0; u < n; ++u)
    for (int p = 0; p < n; ++p)
      sol.x_ref(u, p) = std::clamp(sr.x[var.x(u, p)], 0.0, 1.0);
  const int m = n * n;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b)
      sol.y.pair_ref(a, b) = std::clamp(sr.x[var.y_pair(a, b)], 0.0, 1.0);
  sol.objective = sr.objective;
  return sol;
}

LpSolution solve_relaxation(const QapInstance& inst, LpVariant variant) {
  return solve_lp(build_aj_lp(inst, variant));
}

double lp_objective(const QapInstance& inst, const FoldedY& y) {
  const int n = y.n();
  double s = 0.0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const double wg = inst.g.at(u, v);
      if (wg == 0.0) continue;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) s += wg * inst.h.at(p, q) * y.at(u, p, v, q);
    }
  return s;
}

LpSolution restrict_solution(const QapInstance& inst, const LpSolution& sol,
                             const std::vector<int>& keep_g,
                             const std::vector<int>& keep_h) {
  const int n = sol.n;
  std::vector<char> ag(n, 0), ah(n, 0);
  for (int u : keep_g) {
    if (u < 0 || u >= n) throw std::invalid_argument("restrict_solution: g vertex out of range");
    ag[u] = 1;
  }
  for (int p : keep_h) {
    if (p < 0 || p >= n) throw std::invalid_argument("restrict_solution: h vertex out of range");
    ah[p] = 1;
  }
  LpSolution out = sol;
  out.variant = LpVariant::inequality;
  for (int u = 0; u < n; ++u)
    for (int p = 0; p < n; ++p)
      if (!ag[u] || !ah[p]) out.x_ref(u, p) = 0.0;
  const int m = n * n;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      const int u = a / n, p = a % n, v = b / n, q = b % n;
      if (!ag[u] || !ah[p] || !ag[v] || !ah[q]) out.y.pair_ref(a, b) = 0.0;
    }
  out.objective = lp_objective(inst, out.y);
  return out;
}

std::string write_lp_text(const QapInstance& inst, LpVariant variant) {
  AjLp lp = build_aj_lp(inst, variant);
  const int n = lp.n;
  const VarLayout var(n);
  std::vector<std::string> names(lp.problem.num_vars);
  for (int u = 0; u < n; ++u)
    for (int p = 0; p < n; ++p) {
      std::ostringstream nm;
      nm << "x_" << u << "_" << p;
      names[var.x(u, p)] = nm.str();
    }
  const int m = n * n;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      std::ostringstream nm;
      nm << "y_" << a / n << "_" << a % n << "_" << b / n << "_" << b % n;
      names[var.y_pair(a, b)] = nm.str();
    }

  std::ostringstream out;
  out << "Maximize\n obj:";
  bool any = false;
  for (int j = 0; j < lp.problem.num_vars; ++j) {
    if (lp.problem.obj[j] == 0.0) continue;
    out << " + " << lp.problem.obj[j] << " " << names[j];
    any = true;
  }
  if (!any) out << " 0 " << names[0];
  out << "\nSubject To\n";

  // Transpose columns into rows for printing.
  std::vector<std::vector<std::pair<int, double>>> row_terms(lp.problem.num_rows);
  for (int j = 0; j < lp.problem.num_vars; ++j)
    for (int t = lp.problem.col_start[j]; t < lp.problem.col_start[j + 1]; ++t)
      row_terms[lp.problem.col_row[t]].emplace_back(j, lp.problem.col_val[t]);
  for (int i = 0; i < lp.problem.num_rows; ++i) {
    out << " r" << i << ":";
    for (auto& [j, v] : row_terms[i]) out << (v >= 0 ? " + " : " - ") << names[j];
    out << (variant == LpVariant::equality ? " = " : " <= ") << lp.problem.rhs[i] << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.problem.num_vars; ++j)
    out << " 0 <= " << names[j] << " <= 1\n";
  out << "End\n";
  return out.str();
}

}  // namespace qaplab

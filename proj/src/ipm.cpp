#include "qaplab/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qaplab {

namespace {

// Dense Cholesky in place; returns false if the matrix is not (numerically)
// positive definite.
bool cholesky(std::vector<double>& a, int m) {
  for (int j = 0; j < m; ++j) {
    double d = a[static_cast<std::size_t>(j) * m + j];
    for (int k = 0; k < j; ++k) {
      const double l = a[static_cast<std::size_t>(j) * m + k];
      d -= l * l;
    }
    if (d <= 0.0) return false;
    d = std::sqrt(d);
    a[static_cast<std::size_t>(j) * m + j] = d;
    for (int i = j + 1; i < m; ++i) {
      double v = a[static_cast<std::size_t>(i) * m + j];
      const double* ri = &a[static_cast<std::size_t>(i) * m];
      const double* rj = &a[static_cast<std::size_t>(j) * m];
      for (int k = 0; k < j; ++k) v -= ri[k] * rj[k];
      a[static_cast<std::size_t>(i) * m + j] = v / d;
    }
  }
  return true;
}

void cholesky_solve(const std::vector<double>& l, int m, std::vector<double>& b) {
  for (int i = 0; i < m; ++i) {
    double v = b[i];
    const double* ri = &l[static_cast<std::size_t>(i) * m];
    for (int k = 0; k < i; ++k) v -= ri[k] * b[k];
    b[i] = v / ri[i];
  }
  for (int i = m - 1; i >= 0; --i) {
    double v = b[i];
    for (int k = i + 1; k < m; ++k) v -= l[static_cast<std::size_t>(k) * m + i] * b[k];
    b[i] = v / l[static_cast<std::size_t>(i) * m + i];
  }
}

}  // namespace

IpmResult solve_ipm(const LpProblem& prob, const IpmOptions& opt) {
  const int m = prob.num_rows;
  if (static_cast<int>(prob.col_start.size()) != prob.num_vars + 1)
    throw std::invalid_argument("ipm: bad column index");
  for (double b : prob.rhs)
    if (!(b >= 0.0)) throw std::invalid_argument("ipm: rhs must be nonnegative");

  // Append one slack column per '<=' row so everything is an equation.
  int n_slack = 0;
  for (int i = 0; i < m; ++i)
    if (!prob.row_equality[i]) ++n_slack;
  const int nv = prob.num_vars + n_slack;

  std::vector<int> start(nv + 1, 0);
  std::vector<int> rows(prob.col_row.size() + n_slack);
  std::vector<double> vals(prob.col_val.size() + n_slack);
  for (int j = 0; j < prob.num_vars; ++j) start[j + 1] = prob.col_start[j + 1];
  std::copy(prob.col_row.begin(), prob.col_row.end(), rows.begin());
  std::copy(prob.col_val.begin(), prob.col_val.end(), vals.begin());
  {
    int j = prob.num_vars;
    int nz = static_cast<int>(prob.col_row.size());
    for (int i = 0; i < m; ++i) {
      if (prob.row_equality[i]) continue;
      rows[nz] = i;
      vals[nz] = 1.0;
      start[j + 1] = ++nz;
      ++j;
    }
  }
  // Minimization form.
  std::vector<double> c(nv, 0.0);
  for (int j = 0; j < prob.num_vars; ++j) c[j] = -prob.obj[j];

  auto a_times = [&](const std::vector<double>& v, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int j = 0; j < nv; ++j) {
      const double vj = v[j];
      if (vj == 0.0) continue;
      for (int t = start[j]; t < start[j + 1]; ++t) out[rows[t]] += vals[t] * vj;
    }
  };
  auto at_times = [&](const std::vector<double>& y, std::vector<double>& out) {
    for (int j = 0; j < nv; ++j) {
      double v = 0.0;
      for (int t = start[j]; t < start[j + 1]; ++t) v += vals[t] * y[rows[t]];
      out[j] = v;
    }
  };

  double b_norm = 1.0, c_norm = 1.0;
  for (double v : prob.rhs) b_norm = std::max(b_norm, std::abs(v));
  for (double v : c) c_norm = std::max(c_norm, std::abs(v));

  // Simple well-scaled interior start.
  const double x0 = std::max(1.0, b_norm);
  const double s0 = std::max(1.0, c_norm);
  std::vector<double> x(nv, x0), s(nv, s0), y(m, 0.0);

  std::vector<double> rp(m), rd(nv), d2(nv), mmat;
  std::vector<double> ax(m), aty(nv), rhs_y(m), tmp_v(nv);
  std::vector<double> dx_aff(nv), ds_aff(nv), dy(m), dx(nv), ds(nv);

  IpmResult res;
  double ridge_scale = 1e-12;

  for (int it = 0; it < opt.max_iterations; ++it) {
    a_times(x, ax);
    for (int i = 0; i < m; ++i) rp[i] = prob.rhs[i] - ax[i];
    at_times(y, aty);
    for (int j = 0; j < nv; ++j) rd[j] = c[j] - aty[j] - s[j];
    double mu = 0.0;
    for (int j = 0; j < nv; ++j) mu += x[j] * s[j];
    mu /= nv;

    double rp_inf = 0.0, rd_inf = 0.0;
    for (double v : rp) rp_inf = std::max(rp_inf, std::abs(v));
    for (double v : rd) rd_inf = std::max(rd_inf, std::abs(v));
    double pobj = 0.0, dobj = 0.0;
    for (int j = 0; j < nv; ++j) pobj += c[j] * x[j];
    for (int i = 0; i < m; ++i) dobj += prob.rhs[i] * y[i];
    const double gap = std::abs(pobj - dobj);
    res.stats.iterations = it;
    res.stats.primal_residual = rp_inf;
    res.stats.dual_residual = rd_inf;
    res.stats.duality_gap = gap;
    const double gap_rel = gap / (1.0 + std::abs(pobj));
    if (rp_inf / b_norm <= opt.feas_tol && rd_inf / c_norm <= opt.feas_tol &&
        gap_rel <= opt.gap_tol)
      break;

    // Normal-equations matrix A D^2 A' with a tiny ridge for the dependent
    // rows of these systems.
    for (int j = 0; j < nv; ++j) d2[j] = x[j] / s[j];
    mmat.assign(static_cast<std::size_t>(m) * m, 0.0);
    double trace_scale = 0.0;
    for (int j = 0; j < nv; ++j) {
      const double dj = d2[j];
      for (int t1 = start[j]; t1 < start[j + 1]; ++t1) {
        const double w1 = dj * vals[t1];
        const int r1 = rows[t1];
        trace_scale += w1 * vals[t1];
        for (int t2 = start[j]; t2 < start[j + 1]; ++t2) {
          const int r2 = rows[t2];
          if (r2 <= r1) mmat[static_cast<std::size_t>(r1) * m + r2] += w1 * vals[t2];
        }
      }
    }
    for (int i = 0; i < m; ++i)
      for (int k = i + 1; k < m; ++k)
        mmat[static_cast<std::size_t>(i) * m + k] = mmat[static_cast<std::size_t>(k) * m + i];
    std::vector<double> factor;
    bool ok = false;
    double ridge = ridge_scale * std::max(trace_scale / m, 1.0);
    for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
      factor = mmat;
      for (int i = 0; i < m; ++i) factor[static_cast<std::size_t>(i) * m + i] += ridge;
      ok = cholesky(factor, m);
      if (!ok) ridge *= 100.0;
    }
    if (!ok) throw std::runtime_error("ipm: normal equations factorization failed");

    auto solve_step = [&](const std::vector<double>& rxs, std::vector<double>& out_dy,
                          std::vector<double>& out_dx, std::vector<double>& out_ds) {
      // rhs = rp + A (D^2 rd - S^{-1} rxs)
      for (int j = 0; j < nv; ++j) tmp_v[j] = d2[j] * rd[j] - rxs[j] / s[j];
      a_times(tmp_v, rhs_y);
      for (int i = 0; i < m; ++i) rhs_y[i] += rp[i];
      out_dy = rhs_y;
      cholesky_solve(factor, m, out_dy);
      at_times(out_dy, tmp_v);
      for (int j = 0; j < nv; ++j) {
        out_ds[j] = rd[j] - tmp_v[j];
        out_dx[j] = rxs[j] / s[j] - d2[j] * out_ds[j];
      }
    };

    // Predictor.
    std::vector<double> rxs(nv);
    for (int j = 0; j < nv; ++j) rxs[j] = -x[j] * s[j];
    solve_step(rxs, dy, dx_aff, ds_aff);
    double ap = 1.0, ad = 1.0;
    for (int j = 0; j < nv; ++j) {
      if (dx_aff[j] < 0.0) ap = std::min(ap, -x[j] / dx_aff[j]);
      if (ds_aff[j] < 0.0) ad = std::min(ad, -s[j] / ds_aff[j]);
    }
    double mu_aff = 0.0;
    for (int j = 0; j < nv; ++j)
      mu_aff += (x[j] + ap * dx_aff[j]) * (s[j] + ad * ds_aff[j]);
    mu_aff /= nv;
    const double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);

    // Corrector, combined step.
    for (int j = 0; j < nv; ++j)
      rxs[j] = sigma * mu - x[j] * s[j] - dx_aff[j] * ds_aff[j];
    solve_step(rxs, dy, dx, ds);
    ap = ad = 1.0;
    for (int j = 0; j < nv; ++j) {
      if (dx[j] < 0.0) ap = std::min(ap, -x[j] / dx[j]);
      if (ds[j] < 0.0) ad = std::min(ad, -s[j] / ds[j]);
    }
    const double eta = it < 20 ? 0.99 : 0.999;
    ap = std::min(1.0, eta * ap);
    ad = std::min(1.0, eta * ad);
    for (int j = 0; j < nv; ++j) {
      x[j] += ap * dx[j];
      s[j] += ad * ds[j];
    }
    for (int i = 0; i < m; ++i) y[i] += ad * dy[i];
  }

  if (res.stats.primal_residual / b_norm > opt.accept_tol ||
      res.stats.dual_residual / c_norm > opt.accept_tol ||
      res.stats.duality_gap > opt.accept_tol * (1.0 + b_norm * c_norm))
    throw std::runtime_error("ipm: failed to certify optimality within tolerance");

  res.x.assign(prob.num_vars, 0.0);
  for (int j = 0; j < prob.num_vars; ++j) res.x[j] = std::max(x[j], 0.0);
  res.objective = 0.0;
  for (int j = 0; j < prob.num_vars; ++j) res.objective += prob.obj[j] * res.x[j];
  return res;
}

}  // namespace qaplab

#include "qaplab/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qaplab/rng.hpp"

namespace qaplab {

PerfectMatchingResult max_weight_perfect_matching(const CostMatrix& cost) {
  if (cost.rows != cost.cols)
    throw std::invalid_argument("perfect matching: cost matrix must be square");
  const int n = cost.rows;
  for (double x : cost.c)
    if (!std::isfinite(x))
      throw std::invalid_argument("perfect matching: non-finite cost");
  PerfectMatchingResult res;
  res.match.assign(n, -1);
  if (n == 0) return res;

  // Shortest-augmenting-path Hungarian on negated costs (minimization).
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = -cost.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  for (int j = 1; j <= n; ++j)
    if (p[j]) res.match[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) res.value += cost.at(i, res.match[i]);
  return res;
}

PartialMatchingResult max_weight_partial_matching(const CostMatrix& cost) {
  const int r = cost.rows, c = cost.cols;
  PartialMatchingResult res;
  res.match.assign(r, -1);
  if (r == 0 || c == 0) return res;
  // Pad to a square of size r+c; slack cells cost 0, so rows may stay
  // unmatched and an optimum never pays a negative marginal.
  const int s = r + c;
  CostMatrix big(s, s);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) big.at(i, j) = cost.at(i, j);
  PerfectMatchingResult perfect = max_weight_perfect_matching(big);
  for (int i = 0; i < r; ++i) {
    int j = perfect.match[i];
    if (j < c) {
      res.match[i] = j;
      res.value += cost.at(i, j);
    }
  }
  return res;
}

namespace {

constexpr double kSupportEps = 1e-12;

// Kuhn's augmenting-path matching on an explicit support graph.
bool kuhn_augment(int row, const std::vector<std::vector<int>>& adj,
                  std::vector<int>& col_match, std::vector<char>& visited) {
  for (int col : adj[row]) {
    if (visited[col]) continue;
    visited[col] = 1;
    if (col_match[col] < 0 || kuhn_augment(col_match[col], adj, col_match, visited)) {
      col_match[col] = row;
      return true;
    }
  }
  return false;
}

bool perfect_matching_on_support(const std::vector<double>& m, int s,
                                 std::vector<int>& row_match) {
  std::vector<std::vector<int>> adj(s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if (m[static_cast<std::size_t>(i) * s + j] > kSupportEps) adj[i].push_back(j);
  std::vector<int> col_match(s, -1);
  for (int i = 0; i < s; ++i) {
    std::vector<char> visited(s, 0);
    if (!kuhn_augment(i, adj, col_match, visited)) return false;
  }
  row_match.assign(s, -1);
  for (int j = 0; j < s; ++j) row_match[col_match[j]] = j;
  return true;
}

// Caratheodory reduction: while more than `limit` nonempty matchings are
// used, find a dependency among their incidence vectors and shift weights
// along it until one drops out. While the empty matching still carries
// residual weight it joins the dependency as an extra point (affine mode,
// so the residual keeps absorbing slack); once the residual is exhausted a
// plain linear dependency preserves the total weight exactly. Keeps the
// reconstruction and the convex-combination property intact.
void reduce_term_count(std::vector<WeightedMatching>& parts,
                       const std::vector<std::pair<int, int>>& support,
                       int limit) {
  const int dim = static_cast<int>(support.size());
  int budget = 4 * static_cast<int>(parts.size()) + 16;
  while (static_cast<int>(parts.size()) > limit) {
    const int t = static_cast<int>(parts.size());
    double empty_weight = 1.0;
    for (const auto& p : parts) empty_weight -= p.weight;
    const bool affine = empty_weight > kSupportEps;

    // Columns: the parts, preceded by the empty matching in affine mode.
    // Rows: one per support cell, plus a row of ones in affine mode.
    const int off = affine ? 1 : 0;
    const int nr = dim + off, nc = t + off;
    if (nc <= nr && !affine) return;  // no dependency guaranteed
    std::vector<double> a(static_cast<std::size_t>(nr) * nc, 0.0);
    for (int k = 0; k < t; ++k)
      for (int d = 0; d < dim; ++d)
        if (parts[k].match[support[d].first] == support[d].second)
          a[static_cast<std::size_t>(d) * nc + (k + off)] = 1.0;
    if (affine)
      for (int k = 0; k < nc; ++k) a[static_cast<std::size_t>(dim) * nc + k] = 1.0;

    // Gauss-Jordan with partial pivoting; nc > nr guarantees a free column
    // and therefore a nontrivial null vector.
    std::vector<int> pivot_col(nr, -1);
    std::vector<char> is_pivot(nc, 0);
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
      int best = -1;
      double best_abs = 1e-9;
      for (int i = row; i < nr; ++i) {
        double v = std::abs(a[static_cast<std::size_t>(i) * nc + col]);
        if (v > best_abs) {
          best_abs = v;
          best = i;
        }
      }
      if (best < 0) continue;
      for (int j = 0; j < nc; ++j)
        std::swap(a[static_cast<std::size_t>(best) * nc + j],
                  a[static_cast<std::size_t>(row) * nc + j]);
      double piv = a[static_cast<std::size_t>(row) * nc + col];
      for (int i = 0; i < nr; ++i) {
        if (i == row) continue;
        double f = a[static_cast<std::size_t>(i) * nc + col] / piv;
        if (f == 0.0) continue;
        for (int j = 0; j < nc; ++j)
          a[static_cast<std::size_t>(i) * nc + j] -= f * a[static_cast<std::size_t>(row) * nc + j];
      }
      pivot_col[row] = col;
      is_pivot[col] = 1;
      ++row;
    }
    int free_col = -1;
    for (int col = 0; col < nc; ++col)
      if (!is_pivot[col]) {
        free_col = col;
        break;
      }
    if (free_col < 0) return;
    std::vector<double> mu(nc, 0.0);
    mu[free_col] = 1.0;
    for (int i = 0; i < row; ++i) {
      int col = pivot_col[i];
      if (col < 0) continue;
      mu[col] = -a[static_cast<std::size_t>(i) * nc + free_col] /
                a[static_cast<std::size_t>(i) * nc + col];
    }

    auto has_positive_candidate = [&]() {
      if (affine && mu[0] > kSupportEps) return true;
      for (int k = 0; k < t; ++k)
        if (mu[k + off] > kSupportEps) return true;
      return false;
    };
    if (!affine) {
      // Without the empty point the step changes the total weight by
      // -theta * sum(mu); orient so the total can only shrink.
      double smu = 0.0;
      for (double v : mu) smu += v;
      if (smu < -kSupportEps)
        for (double& v : mu) v = -v;
    }
    if (!has_positive_candidate())
      for (double& v : mu) v = -v;
    if (!has_positive_candidate()) return;

    double theta = std::numeric_limits<double>::infinity();
    for (int k = 0; k < t; ++k)
      if (mu[k + off] > kSupportEps)
        theta = std::min(theta, parts[k].weight / mu[k + off]);
    if (affine && mu[0] > kSupportEps)
      theta = std::min(theta, empty_weight / mu[0]);
    if (!std::isfinite(theta)) return;

    for (int k = 0; k < t; ++k) parts[k].weight -= theta * mu[k + off];
    std::erase_if(parts, [](const WeightedMatching& p) { return p.weight <= kSupportEps; });
    if (--budget <= 0) return;
  }
}

}  // namespace

std::vector<WeightedMatching> decompose_fractional_matching(const FractionalMatching& fm) {
  const int r = fm.rows, c = fm.cols;
  const double tol = 1e-7;
  std::vector<double> z = fm.z;
  for (double& x : z) {
    if (!std::isfinite(x) || x < -tol || x > 1.0 + tol)
      throw std::invalid_argument("fractional matching: entry outside [0,1]");
    x = std::clamp(x, 0.0, 1.0);
  }
  for (int i = 0; i < r; ++i) {
    double s = 0.0;
    for (int j = 0; j < c; ++j) s += z[static_cast<std::size_t>(i) * c + j];
    if (s > 1.0 + tol)
      throw std::invalid_argument("fractional matching: row sum exceeds 1");
  }
  for (int j = 0; j < c; ++j) {
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += z[static_cast<std::size_t>(i) * c + j];
    if (s > 1.0 + tol)
      throw std::invalid_argument("fractional matching: column sum exceeds 1");
  }

  std::vector<WeightedMatching> parts;
  if (r == 0 || c == 0) return parts;

  // Doubly stochastic completion of size r+c:
  //   [ z            diag(1-rowsum) ]
  //   [ diag(1-colsum)     z^T      ]
  // Peeling perfect matchings off the completion keeps the total extracted
  // weight at exactly 1, so the real restrictions form a convex combination.
  const int s = r + c;
  std::vector<double> big(static_cast<std::size_t>(s) * s, 0.0);
  auto bat = [&](int i, int j) -> double& { return big[static_cast<std::size_t>(i) * s + j]; };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      bat(i, j) = z[static_cast<std::size_t>(i) * c + j];
      bat(r + j, c + i) = z[static_cast<std::size_t>(i) * c + j];
    }
  for (int i = 0; i < r; ++i) {
    double s_row = 0.0;
    for (int j = 0; j < c; ++j) s_row += z[static_cast<std::size_t>(i) * c + j];
    bat(i, c + i) = std::max(1.0 - s_row, 0.0);
  }
  for (int j = 0; j < c; ++j) {
    double s_col = 0.0;
    for (int i = 0; i < r; ++i) s_col += z[static_cast<std::size_t>(i) * c + j];
    bat(r + j, j) = std::max(1.0 - s_col, 0.0);
  }

  auto real_mass_left = [&]() {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (bat(i, j) > kSupportEps) return true;
    return false;
  };

  const int max_steps = 4 * s * s + 16;
  std::vector<int> row_match;
  for (int step = 0; step < max_steps && real_mass_left(); ++step) {
    if (!perfect_matching_on_support(big, s, row_match)) break;
    double delta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s; ++i) delta = std::min(delta, bat(i, row_match[i]));
    if (!(delta > 0.0)) break;
    WeightedMatching part;
    part.weight = delta;
    part.match.assign(r, -1);
    bool nonempty = false;
    for (int i = 0; i < s; ++i) {
      int j = row_match[i];
      bat(i, j) -= delta;
      if (bat(i, j) < kSupportEps) bat(i, j) = 0.0;
      if (i < r && j < c) {
        part.match[i] = j;
        nonempty = true;
      }
    }
    if (nonempty) parts.push_back(std::move(part));
  }

  int nnz = 0;
  std::vector<std::pair<int, int>> support;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (fm.at(i, j) > kSupportEps) {
        support.emplace_back(i, j);
        ++nnz;
      }
  reduce_term_count(parts, support, nnz);
  return parts;
}

std::vector<int> sample_matching(const std::vector<WeightedMatching>& parts,
                                 int rows, std::uint64_t seed) {
  Rng rng(mix64(seed, 0x5a));
  double u = rng.uniform01();
  double acc = 0.0;
  for (const auto& p : parts) {
    acc += p.weight;
    if (u < acc) return p.match;
  }
  return std::vector<int>(rows, -1);  // residual: empty matching
}

}  // namespace qaplab

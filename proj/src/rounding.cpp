#include "qaplab/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qaplab/matching.hpp"
#include "qaplab/rng.hpp"

namespace qaplab {

namespace {

// score(u,v) = sum_{p,q} w_g(u,v) w_h(p,q) y(u,p,v,q); the LP objective is
// the sum of this matrix. Restricted solutions have zeros outside the alive
// block, so no masking is needed here.
std::vector<double> score_matrix(const QapInstance& inst, const FoldedY& y) {
  const int n = y.n();
  std::vector<double> s(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const double wg = inst.g.at(u, v);
      if (wg == 0.0) continue;
      double acc = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const double wh = inst.h.at(p, q);
          if (wh != 0.0) acc += wh * y.at(u, p, v, q);
        }
      s[static_cast<std::size_t>(u) * n + v] = wg * acc;
    }
  return s;
}

// Objective mass whose first h-slot equals p.
std::vector<double> h_score_vector(const QapInstance& inst, const FoldedY& y) {
  const int n = y.n();
  std::vector<double> s(n, 0.0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const double wg = inst.g.at(u, v);
      if (wg == 0.0) continue;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) s[p] += wg * inst.h.at(p, q) * y.at(u, p, v, q);
    }
  return s;
}

int isqrt_ceil(int k) {
  int r = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k))));
  while (r > 0 && static_cast<long long>(r - 1) * (r - 1) >= k) --r;
  while (static_cast<long long>(r) * r < k) ++r;
  return r;
}

// Heavy neighbor sets over a restricted candidate list: the ceil(sqrt(m))
// largest w_g(u, .) candidates, ties toward the lower index.
std::vector<int> heavy_set_for(const QapInstance& inst, int u,
                               const std::vector<int>& candidates, int size) {
  std::vector<int> order = candidates;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double wa = inst.g.at(u, a), wb = inst.g.at(u, b);
    if (wa != wb) return wa > wb;
    return a < b;
  });
  order.resize(std::min<std::size_t>(order.size(), size));
  std::sort(order.begin(), order.end());
  return order;
}

struct MaskedSplit {
  double lp_heavy = 0.0, lp_light = 0.0;
  std::vector<std::vector<int>> heavy_sets;  // indexed by global vertex
};

MaskedSplit split_masked(const QapInstance& inst, const std::vector<double>& score,
                         const std::vector<int>& alive_g) {
  const int n = inst.g.n;
  const int m = static_cast<int>(alive_g.size());
  const int hs = std::min(isqrt_ceil(m), m);
  MaskedSplit out;
  out.heavy_sets.assign(n, {});
  for (int u : alive_g) {
    std::vector<int> wu = heavy_set_for(inst, u, alive_g, hs);
    std::vector<char> in_wu(n, 0);
    for (int v : wu) in_wu[v] = 1;
    for (int v : alive_g) {
      double sc = score[static_cast<std::size_t>(u) * n + v];
      (in_wu[v] ? out.lp_heavy : out.lp_light) += sc;
    }
    out.heavy_sets[u] = std::move(wu);
  }
  return out;
}

double masked_volume(const QapInstance& inst, const std::vector<double>& score,
                     const std::vector<double>& hscore, const std::vector<int>& s,
                     const std::vector<int>& t) {
  const int n = inst.g.n;
  double vol = 0.0;
  for (int u : s)
    for (int v = 0; v < n; ++v) vol += score[static_cast<std::size_t>(u) * n + v];
  for (int p : t) vol += hscore[p];
  return vol;
}

void fill_leftovers(const std::vector<int>& alive_g, const std::vector<int>& alive_h,
                    std::vector<int>& out) {
  std::vector<char> used(out.size(), 0);
  for (int v : out)
    if (v >= 0) used[v] = 1;
  std::size_t next = 0;
  for (int u : alive_g) {
    if (out[u] >= 0) continue;
    while (next < alive_h.size() && used[alive_h[next]]) ++next;
    out[u] = alive_h[next];
    used[alive_h[next]] = 1;
  }
}

// Light-dominated finish: two bijections from rank-one and best-response
// matchings, a directed cut on each side, then the union of the surviving
// halves.
void case_one_assign(const QapInstance& inst, const std::vector<int>& ag,
                     const std::vector<int>& ah, std::vector<int>& out) {
  const int k = static_cast<int>(ag.size());
  if (k == 0) return;
  std::vector<double> mass_g(k, 0.0), mass_h(k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      mass_g[i] += inst.g.at(ag[i], ag[j]);
      mass_h[i] += inst.h.at(ah[i], ah[j]);
    }
  CostMatrix c1(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c1.at(i, j) = mass_g[i] * mass_h[j] / k;
  std::vector<int> phi = max_weight_perfect_matching(c1).match;

  CostMatrix c2(k, k);
  for (int v = 0; v < k; ++v)
    for (int q = 0; q < k; ++q) {
      double s = 0.0;
      for (int i = 0; i < k; ++i)
        s += inst.g.at(ag[i], ag[v]) * inst.h.at(ah[phi[i]], ah[q]);
      c2.at(v, q) = s;
    }
  std::vector<int> nu = max_weight_perfect_matching(c2).match;

  DirectedGraph dg(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      dg.at(i, j) = inst.g.at(ag[i], ag[j]) * inst.h.at(ah[phi[i]], ah[nu[j]]);
    }
  CutPartition cg = greedy_max_dicut(dg);
  std::vector<char> left_g(k, 0), right_g(k, 0);
  for (int i : cg.left) left_g[i] = 1;
  for (int i : cg.right) right_g[i] = 1;

  std::vector<int> inv_phi(k), inv_nu(k);
  for (int i = 0; i < k; ++i) {
    inv_phi[phi[i]] = i;
    inv_nu[nu[i]] = i;
  }
  DirectedGraph dh(k);
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      if (p == q) continue;
      const int u = inv_phi[p], v = inv_nu[q];
      if (left_g[u] && right_g[v])
        dh.at(p, q) = inst.g.at(ag[u], ag[v]) * inst.h.at(ah[p], ah[q]);
    }
  CutPartition ch = greedy_max_dicut(dh);
  std::vector<char> left_h(k, 0), right_h(k, 0);
  for (int p : ch.left) left_h[p] = 1;
  for (int p : ch.right) right_h[p] = 1;

  for (int i = 0; i < k; ++i) {
    if (left_g[i] && left_h[phi[i]]) out[ag[i]] = ah[phi[i]];
    if (right_g[i] && right_h[nu[i]]) out[ag[i]] = ah[nu[i]];
  }
  fill_leftovers(ag, ah, out);
}

StarChoice find_star_masked(const QapInstance& inst,
                            const std::vector<double>& score,
                            const std::vector<double>& hscore,
                            const std::vector<int>& ag, const std::vector<int>& ah,
                            double penalty_coeff) {
  const int n = inst.g.n;
  const int k = static_cast<int>(ag.size());
  std::vector<double> vol_g(n, 0.0);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) vol_g[v] += score[static_cast<std::size_t>(u) * n + v];
  const double pen = penalty_coeff / std::sqrt(static_cast<double>(std::max(k, 1)));

  StarChoice best;
  best.penalized = -std::numeric_limits<double>::infinity();
  for (int u : ag)
    for (int p : ah) {
      std::vector<int> leaves, images;
      for (int v : ag)
        if (v != u) leaves.push_back(v);
      for (int q : ah)
        if (q != p) images.push_back(q);
      CostMatrix cost(static_cast<int>(leaves.size()), static_cast<int>(images.size()));
      for (std::size_t vi = 0; vi < leaves.size(); ++vi)
        for (std::size_t qi = 0; qi < images.size(); ++qi)
          cost.at(static_cast<int>(vi), static_cast<int>(qi)) =
              2.0 * inst.g.at(u, leaves[vi]) * inst.h.at(p, images[qi]) -
              pen * (vol_g[leaves[vi]] + hscore[images[qi]]);
      PartialMatchingResult pm = max_weight_partial_matching(cost);
      double penalized = pm.value - pen * (vol_g[u] + hscore[p]);
      if (penalized > best.penalized) {
        best.penalized = penalized;
        best.center = u;
        best.center_image = p;
        best.leaves.clear();
        best.profit = 0.0;
        for (std::size_t vi = 0; vi < leaves.size(); ++vi) {
          int qi = pm.match[vi];
          if (qi < 0) continue;
          best.leaves.emplace_back(leaves[vi], images[qi]);
          best.profit += inst.g.at(u, leaves[vi]) * inst.h.at(p, images[qi]);
        }
      }
    }
  return best;
}

void check_solution_shape(const QapInstance& inst, const LpSolution& sol) {
  if (inst.g.n != inst.h.n)
    throw std::invalid_argument("rounding: instance must be square");
  if (sol.n != inst.g.n)
    throw std::invalid_argument("rounding: solution size does not match instance");
}

}  // namespace

HeavyLightSplit heavy_light_split(const QapInstance& inst, const LpSolution& sol) {
  check_solution_shape(inst, sol);
  const int n = inst.g.n;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  MaskedSplit ms = split_masked(inst, score_matrix(inst, sol.y), all);
  HeavyLightSplit out;
  out.heavy_sets = std::move(ms.heavy_sets);
  out.lp_heavy = ms.lp_heavy;
  out.lp_light = ms.lp_light;
  return out;
}

StarDecomposition build_stars(const QapInstance& inst, const LpSolution& sol,
                              const std::vector<int>& r_g) {
  check_solution_shape(inst, sol);
  const int n = inst.g.n;
  std::vector<double> score = score_matrix(inst, sol.y);
  StarDecomposition out;
  out.center_of.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    int best_u = 0;
    double best = score[static_cast<std::size_t>(0) * n + v];
    for (int u = 1; u < n; ++u) {
      double s = score[static_cast<std::size_t>(u) * n + v];
      if (s > best) {
        best = s;
        best_u = u;
      }
    }
    out.center_of[v] = best_u;
  }
  std::vector<std::vector<int>> leaves(n);
  for (int v : r_g) {
    if (v < 0 || v >= n) throw std::invalid_argument("build_stars: leaf out of range");
    leaves[out.center_of[v]].push_back(v);
  }
  for (int u = 0; u < n; ++u)
    if (!leaves[u].empty()) {
      std::sort(leaves[u].begin(), leaves[u].end());
      out.stars.emplace_back(u, std::move(leaves[u]));
    }
  return out;
}

CutPartition greedy_max_cut(const WeightedGraph& g) {
  CutPartition out;
  std::vector<char> in_left(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    double to_left = 0.0, to_right = 0.0;
    for (int u : out.left) to_left += g.at(v, u);
    for (int u : out.right) to_right += g.at(v, u);
    if (to_right > to_left) {
      out.left.push_back(v);
      in_left[v] = 1;
    } else {
      out.right.push_back(v);
    }
  }
  for (int u : out.left)
    for (int v : out.right) out.cut_value += g.at(u, v);
  return out;
}

CutPartition greedy_max_dicut(const DirectedGraph& d) {
  WeightedGraph und(d.n);
  for (int p = 0; p < d.n; ++p)
    for (int q = p + 1; q < d.n; ++q) und.set_edge(p, q, d.at(p, q) + d.at(q, p));
  CutPartition cut = greedy_max_cut(und);
  double forward = 0.0, backward = 0.0;
  for (int p : cut.left)
    for (int q : cut.right) {
      forward += d.at(p, q);
      backward += d.at(q, p);
    }
  CutPartition out;
  if (forward >= backward) {
    out.left = cut.left;
    out.right = cut.right;
    out.cut_value = forward;
  } else {
    out.left = cut.right;
    out.right = cut.left;
    out.cut_value = backward;
  }
  return out;
}

double vol_lp(const QapInstance& inst, const LpSolution& sol,
              const std::vector<int>& s, const std::vector<int>& t) {
  check_solution_shape(inst, sol);
  return masked_volume(inst, score_matrix(inst, sol.y), h_score_vector(inst, sol.y),
                       s, t);
}

std::pair<std::vector<int>, std::vector<int>> case1_bijections(
    const QapInstance& inst, const LpSolution& sol) {
  check_solution_shape(inst, sol);
  const int n = inst.g.n;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  // Reuse the masked machinery for the two matchings only.
  std::vector<double> mass_g(n, 0.0), mass_h(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mass_g[i] += inst.g.at(i, j);
      mass_h[i] += inst.h.at(i, j);
    }
  CostMatrix c1(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c1.at(i, j) = mass_g[i] * mass_h[j] / n;
  std::vector<int> phi = max_weight_perfect_matching(c1).match;
  CostMatrix c2(n, n);
  for (int v = 0; v < n; ++v)
    for (int q = 0; q < n; ++q) {
      double s = 0.0;
      for (int u = 0; u < n; ++u) s += inst.g.at(u, v) * inst.h.at(phi[u], q);
      c2.at(v, q) = s;
    }
  std::vector<int> nu = max_weight_perfect_matching(c2).match;
  return {phi, nu};
}

StarChoice find_star_and_map(const QapInstance& inst, const LpSolution& sol,
                             double penalty_coeff) {
  check_solution_shape(inst, sol);
  const int n = inst.g.n;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::vector<double> score = score_matrix(inst, sol.y);
  std::vector<double> hscore = h_score_vector(inst, sol.y);
  return find_star_masked(inst, score, hscore, all, all, penalty_coeff);
}

Assignment randomized_round(const QapInstance& inst, const LpSolution& sol,
                            std::uint64_t seed) {
  check_solution_shape(inst, sol);
  const int n = inst.g.n;
  for (int u = 0; u < n; ++u) {
    double row = 0.0, col = 0.0;
    for (int p = 0; p < n; ++p) {
      row += sol.x_at(u, p);
      col += sol.x_at(p, u);
    }
    if (std::abs(row - 1.0) > 1e-6 || std::abs(col - 1.0) > 1e-6)
      throw std::invalid_argument("randomized_round: marginals are not doubly stochastic");
  }

  std::vector<int> out(n, -1);
  if (n == 1) {
    out[0] = 0;
    return make_assignment(inst, out);
  }

  const int half = n / 2;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Rng rg(mix64(seed, 0x11));
  rg.shuffle(perm);
  std::vector<int> lg(perm.begin(), perm.begin() + half);
  std::vector<int> rgs(perm.begin() + half, perm.end());
  std::sort(lg.begin(), lg.end());
  std::sort(rgs.begin(), rgs.end());

  for (int i = 0; i < n; ++i) perm[i] = i;
  Rng rh(mix64(seed, 0x22));
  rh.shuffle(perm);
  std::vector<int> lh(perm.begin(), perm.begin() + half);
  std::vector<int> rhs(perm.begin() + half, perm.end());
  std::sort(lh.begin(), lh.end());
  std::sort(rhs.begin(), rhs.end());

  // Sample tentative images from the marginal rows restricted to lh; the
  // residual probability leaves the vertex unassigned. Collisions are
  // resolved uniformly with a per-image substream, so outcomes do not depend
  // on iteration order.
  std::vector<std::vector<int>> claimants(n);
  for (int u : lg) {
    double r = Rng(mix64(seed, 0x33, static_cast<std::uint64_t>(u))).uniform01();
    double cum = 0.0;
    for (int p : lh) {
      cum += std::max(sol.x_at(u, p), 0.0);
      if (r < cum) {
        claimants[p].push_back(u);
        break;
      }
    }
  }
  std::vector<int> chosen;  // members of lg that won an image
  for (int p : lh) {
    if (claimants[p].empty()) continue;
    const auto& c = claimants[p];
    int u = c[Rng(mix64(seed, 0x44, static_cast<std::uint64_t>(p)))
                  .below_int(static_cast<int>(c.size()))];
    out[u] = p;
    chosen.push_back(u);
  }

  // Complete the right sides with a maximum-weight matching against the
  // already-fixed left images.
  const int rn = static_cast<int>(rgs.size());
  CostMatrix cost(rn, rn);
  for (int vi = 0; vi < rn; ++vi)
    for (int qi = 0; qi < rn; ++qi) {
      double s = 0.0;
      for (int u : chosen) s += inst.g.at(u, rgs[vi]) * inst.h.at(out[u], rhs[qi]);
      cost.at(vi, qi) = s;
    }
  std::vector<int> psi = max_weight_perfect_matching(cost).match;
  for (int vi = 0; vi < rn; ++vi) out[rgs[vi]] = rhs[psi[vi]];

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  fill_leftovers(all, all, out);
  return make_assignment(inst, out);
}

Assignment best_of_k_rounding(const QapInstance& inst, const LpSolution& sol,
                              int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("best_of_k_rounding: k must be >= 1");
  Assignment best;
  for (int i = 0; i < k; ++i) {
    Assignment a = randomized_round(inst, sol, mix64(seed, 0xb0, static_cast<std::uint64_t>(i)));
    if (best.map.empty() || a.value > best.value) best = std::move(a);
  }
  return best;
}

Assignment derandomized_round(const QapInstance& inst, const LpSolution& sol,
                              const DerandOptions& opts) {
  check_solution_shape(inst, sol);
  const int n = inst.g.n;
  std::vector<int> out(n, -1);
  FoldedY y = sol.y;
  std::vector<char> alive_g(n, 1), alive_h(n, 1);
  // The star-existence argument needs loop-free instances; with loops the
  // search may legitimately come up empty-handed and we just keep going.
  const bool loop_free =
      !inst.g.has_nonzero_diagonal() && !inst.h.has_nonzero_diagonal();

  while (true) {
    std::vector<int> ag, ah;
    for (int u = 0; u < n; ++u)
      if (alive_g[u]) ag.push_back(u);
    for (int p = 0; p < n; ++p)
      if (alive_h[p]) ah.push_back(p);
    if (ag.empty()) break;

    std::vector<double> score = score_matrix(inst, y);
    double obj = 0.0;
    for (double s : score) obj += s;
    if (obj <= 1e-9) {
      fill_leftovers(ag, ah, out);
      break;
    }

    MaskedSplit split = split_masked(inst, score, ag);
    if (split.lp_light >= split.lp_heavy) {
      case_one_assign(inst, ag, ah, out);
      break;
    }

    std::vector<double> hscore = h_score_vector(inst, y);
    StarChoice star =
        find_star_masked(inst, score, hscore, ag, ah, opts.penalty_coeff);
    if (star.penalized < -1e-9 && loop_free)
      throw std::runtime_error(
          "derandomized_round: no star with nonnegative penalized value "
          "(internal error: contradicts the averaging bound)");

    out[star.center] = star.center_image;
    std::vector<int> removed_g = {star.center}, removed_h = {star.center_image};
    for (auto& [v, q] : star.leaves) {
      out[v] = q;
      removed_g.push_back(v);
      removed_h.push_back(q);
    }
    const double footprint = masked_volume(inst, score, hscore, removed_g, removed_h);

    for (int u : removed_g) alive_g[u] = 0;
    for (int p : removed_h) alive_h[p] = 0;
    const int m = n * n;
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        const int u = a / n, p = a % n, v = b / n, q = b % n;
        if (!alive_g[u] || !alive_h[p] || !alive_g[v] || !alive_h[q])
          y.pair_ref(a, b) = 0.0;
      }

    const double new_obj = lp_objective(inst, y);
    if (obj - new_obj > 2.0 * footprint + 1e-6)
      throw std::runtime_error(
          "derandomized_round: restriction removed more than twice the star volume");
  }
  return make_assignment(inst, out);
}

}  // namespace qaplab

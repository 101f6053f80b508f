#include "qaplab/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qaplab/lp.hpp"

namespace qaplab {

long long count_injective_maps(int n_g, int n_h) {
  long long c = 1;
  for (int i = 0; i < n_g; ++i) {
    if (c > 9'000'000'000'000'000'000LL / std::max(n_h - i, 1)) return -1;
    c *= n_h - i;
  }
  return c;
}

namespace {

struct BruteState {
  const QapInstance& inst;
  std::vector<int> map;
  std::vector<char> used;
  std::vector<double> partial;  // objective gain per assigned depth
  double best = -1.0;
  std::vector<int> best_map;

  explicit BruteState(const QapInstance& i)
      : inst(i), map(i.g.n, -1), used(i.h.n, 0), partial(i.g.n, 0.0) {}

  double gain(int u, int p) const {
    if (inst.unweighted) {
      long long hits = 0;
      if (inst.g.at(u, u) != 0.0 && inst.h.at(p, p) != 0.0) ++hits;
      for (int v = 0; v < u; ++v)
        if (inst.g.at(u, v) != 0.0 && inst.h.at(p, map[v]) != 0.0) ++hits;
      return static_cast<double>(hits);
    }
    double s = inst.g.at(u, u) * inst.h.at(p, p);
    for (int v = 0; v < u; ++v) s += 2.0 * inst.g.at(u, v) * inst.h.at(p, map[v]);
    return s;
  }

  void run(int u, double acc) {
    if (u == inst.g.n) {
      if (acc > best) {
        best = acc;
        best_map = map;
      }
      return;
    }
    for (int p = 0; p < inst.h.n; ++p) {
      if (used[p]) continue;
      used[p] = 1;
      map[u] = p;
      run(u + 1, acc + gain(u, p));
      used[p] = 0;
    }
    map[u] = -1;
  }
};

}  // namespace

ExactResult brute_force_opt(const QapInstance& inst, long long guard) {
  inst.validate();
  long long total = count_injective_maps(inst.g.n, inst.h.n);
  if (total < 0 || total > guard) {
    std::ostringstream msg;
    msg << "brute_force_opt: ";
    if (total < 0)
      msg << "more than 9e18";
    else
      msg << total;
    msg << " injective maps exceed the guard of " << guard;
    throw std::runtime_error(msg.str());
  }
  BruteState st(inst);
  st.run(0, 0.0);
  ExactResult res;
  res.opt_map = st.best_map;
  // Re-derive from the map so the reported value is bit-identical to the
  // evaluator (the search accumulates incrementally).
  res.opt_value = value_qap(inst, res.opt_map);
  res.enumerated = total;
  return res;
}

LcExactResult brute_force_label_cover(const LabelCoverInstance& lc, long long guard) {
  lc.validate();
  double total_d = std::pow(static_cast<double>(lc.k), lc.n);
  if (total_d > static_cast<double>(guard)) {
    std::ostringstream msg;
    msg << "brute_force_label_cover: " << total_d << " labelings exceed the guard of "
        << guard;
    throw std::runtime_error(msg.str());
  }
  LcExactResult res;
  res.enumerated = static_cast<long long>(total_d);
  Labeling lab;
  lab.lambda.assign(lc.n, 0);
  res.opt_fraction = -1.0;
  while (true) {
    double v = value_label_cover(lc, lab);
    if (v > res.opt_fraction) {
      res.opt_fraction = v;
      res.labeling = lab;
    }
    int pos = 0;
    while (pos < lc.n && ++lab.lambda[pos] == lc.k) lab.lambda[pos++] = 0;
    if (pos == lc.n) break;
  }
  return res;
}

GapResult integrality_gap(const QapInstance& inst) {
  QapInstance weighted = inst;
  weighted.unweighted = false;  // compare both sides on the ordered objective
  QapInstance square = pad_to_square(weighted);
  GapResult res;
  res.lp_star = solve_relaxation(square, LpVariant::equality).objective;
  res.opt = brute_force_opt(weighted).opt_value;
  if (res.opt > 1e-9) {
    res.gap = res.lp_star / res.opt;
  } else if (res.lp_star > 1e-9) {
    res.infinite = true;
    res.gap = std::numeric_limits<double>::infinity();
  } else {
    res.gap = 1.0;
  }
  return res;
}

}  // namespace qaplab

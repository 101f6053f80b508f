#include "qaplab/graph.hpp"

#include <cmath>
#include <stdexcept>

#include "qaplab/rng.hpp"

namespace qaplab {

double WeightedGraph::total_edge_weight() const {
  double s = 0.0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) s += at(u, v);
  return s;
}

long long WeightedGraph::edge_count() const {
  long long c = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v)
      if (at(u, v) != 0.0) ++c;
  return c;
}

bool WeightedGraph::has_nonzero_diagonal() const {
  for (int u = 0; u < n; ++u)
    if (at(u, u) != 0.0) return true;
  return false;
}

void WeightedGraph::validate() const {
  if (n < 0 || w.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("weighted graph: bad matrix shape");
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      double x = at(u, v);
      if (!std::isfinite(x)) throw std::invalid_argument("weighted graph: non-finite weight");
      if (x < 0.0) throw std::invalid_argument("weighted graph: negative weight");
      if (x != at(v, u)) throw std::invalid_argument("weighted graph: asymmetric weight matrix");
    }
  }
}

void QapInstance::validate() const {
  g.validate();
  h.validate();
  if (g.n > h.n)
    throw std::invalid_argument("qap instance: g has more vertices than h");
  if (unweighted) {
    for (double x : g.w)
      if (x != 0.0 && x != 1.0)
        throw std::invalid_argument("qap instance: unweighted flag set but g has non-0/1 weights");
    for (double x : h.w)
      if (x != 0.0 && x != 1.0)
        throw std::invalid_argument("qap instance: unweighted flag set but h has non-0/1 weights");
  }
}

void check_injective(const std::vector<int>& map, int n_g, int n_h) {
  if (static_cast<int>(map.size()) != n_g)
    throw std::invalid_argument("assignment: wrong map length");
  std::vector<char> used(n_h, 0);
  for (int p : map) {
    if (p < 0 || p >= n_h)
      throw std::invalid_argument("assignment: image out of range");
    if (used[p]) throw std::invalid_argument("assignment: map is not injective");
    used[p] = 1;
  }
}

double value_qap(const QapInstance& inst, const std::vector<int>& map) {
  check_injective(map, inst.g.n, inst.h.n);
  if (inst.unweighted) {
    long long hits = 0;
    for (int u = 0; u < inst.g.n; ++u)
      for (int v = u; v < inst.g.n; ++v)
        if (inst.g.at(u, v) != 0.0 && inst.h.at(map[u], map[v]) != 0.0) ++hits;
    return static_cast<double>(hits);
  }
  double s = 0.0;
  for (int u = 0; u < inst.g.n; ++u) {
    const int pu = map[u];
    for (int v = 0; v < inst.g.n; ++v) s += inst.g.at(u, v) * inst.h.at(pu, map[v]);
  }
  return s;
}

Assignment make_assignment(const QapInstance& inst, std::vector<int> map) {
  Assignment a;
  a.value = value_qap(inst, map);
  a.map = std::move(map);
  return a;
}

namespace {

WeightedGraph random_graph(int n, WeightLaw law, double param, Rng& rng) {
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double x = 0.0;
      switch (law) {
        case WeightLaw::uniform01:
          x = rng.uniform01();
          break;
        case WeightLaw::integer:
          x = static_cast<double>(rng.below(static_cast<std::uint64_t>(param) + 1));
          break;
        case WeightLaw::sparse:
          x = rng.uniform01() < param ? 1.0 : 0.0;
          break;
      }
      g.set_edge(u, v, x);
    }
  }
  return g;
}

}  // namespace

QapInstance random_instance(const GeneratorSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("random_instance: n must be >= 1");
  if (spec.law == WeightLaw::integer && spec.param < 0)
    throw std::invalid_argument("random_instance: integer law needs max >= 0");
  if (spec.law == WeightLaw::sparse && (spec.param < 0.0 || spec.param > 1.0))
    throw std::invalid_argument("random_instance: sparse law needs p in [0,1]");
  QapInstance inst;
  Rng rg(mix64(spec.seed, 0x67));
  Rng rh(mix64(spec.seed, 0x68));
  inst.g = random_graph(spec.n, spec.law, spec.param, rg);
  inst.h = random_graph(spec.n, spec.law, spec.param, rh);
  inst.unweighted = false;
  return inst;
}

QapInstance random_instance(int n, WeightLaw law, double param, std::uint64_t seed) {
  return random_instance(GeneratorSpec{n, law, param, seed});
}

QapInstance pad_to_square(const QapInstance& inst) {
  if (inst.g.n > inst.h.n)
    throw std::invalid_argument("pad_to_square: g larger than h");
  if (inst.g.n == inst.h.n) return inst;
  QapInstance out;
  out.h = inst.h;
  out.unweighted = inst.unweighted;
  out.g = WeightedGraph(inst.h.n);
  for (int u = 0; u < inst.g.n; ++u)
    for (int v = 0; v < inst.g.n; ++v) out.g.at(u, v) = inst.g.at(u, v);
  return out;
}

std::string law_name(WeightLaw law) {
  switch (law) {
    case WeightLaw::uniform01: return "uniform01";
    case WeightLaw::integer: return "integer";
    case WeightLaw::sparse: return "sparse";
  }
  return "?";
}

}  // namespace qaplab

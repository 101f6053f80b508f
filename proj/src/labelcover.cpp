#include "qaplab/labelcover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qaplab/oracle.hpp"
#include "qaplab/rng.hpp"

namespace qaplab {

void LabelCoverInstance::validate() const {
  if (n < 1) throw std::invalid_argument("label cover: need at least one vertex");
  if (k < 1) throw std::invalid_argument("label cover: alphabet must be nonempty");
  if (edges.size() != pi.size())
    throw std::invalid_argument("label cover: one relation per edge required");
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("label cover: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("label cover: self-loop constraint");
    const std::size_t a = static_cast<std::size_t>(std::min(u, v)) * n + std::max(u, v);
    if (seen[a]) throw std::invalid_argument("label cover: duplicate constraint edge");
    seen[a] = 1;
    for (auto [x, y] : pi[e])
      if (x < 0 || x >= k || y < 0 || y >= k)
        throw std::invalid_argument("label cover: relation entry outside alphabet");
  }
}

double value_label_cover(const LabelCoverInstance& lc, const Labeling& lab) {
  lc.validate();
  if (lc.edges.empty())
    throw std::invalid_argument("value_label_cover: fraction undefined for empty edge set");
  if (static_cast<int>(lab.lambda.size()) != lc.n)
    throw std::invalid_argument("value_label_cover: labeling length mismatch");
  for (int x : lab.lambda)
    if (x < 0 || x >= lc.k)
      throw std::invalid_argument("value_label_cover: label outside alphabet");
  long long sat = 0;
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    auto [u, v] = lc.edges[e];
    const int xu = lab.lambda[u], xv = lab.lambda[v];
    for (auto [x, y] : lc.pi[e])
      if (x == xu && y == xv) {
        ++sat;
        break;
      }
  }
  return static_cast<double>(sat) / static_cast<double>(lc.edges.size());
}

long long ReductionOutput::g_edge_count() const {
  long long c = 0;
  for (const auto& s : edge_sets) c += static_cast<long long>(s.size());
  return c;
}

int ReductionOutput::g_vertex(int u, int i) const {
  return static_cast<int>(u * params.cloud_size + i);
}

int ReductionOutput::h_vertex(int u, int x, int i) const {
  return static_cast<int>((static_cast<long long>(u) * lc.k + x) * params.cloud_size + i);
}

ReductionOutput reduce_to_qap(const LabelCoverInstance& lc, long long cloud_size,
                              double alpha, std::uint64_t seed,
                              long long memory_budget) {
  lc.validate();
  const double m_edges = static_cast<double>(lc.edges.size());
  if (cloud_size <= 0) {
    // Built-in schedule: N = ceil(n^4 |E| k^5), alpha = 1/n.
    cloud_size = static_cast<long long>(
        std::ceil(std::pow(static_cast<double>(lc.n), 4.0) * m_edges *
                  std::pow(static_cast<double>(lc.k), 5.0)));
    if (alpha <= 0.0) alpha = 1.0 / static_cast<double>(lc.n);
  }
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("reduce_to_qap: alpha must lie in (0, 1]");
  if (cloud_size < 1) throw std::invalid_argument("reduce_to_qap: cloud size must be >= 1");

  const double ng = static_cast<double>(lc.n) * static_cast<double>(cloud_size);
  const double nh = ng * static_cast<double>(lc.k);
  const double cells = ng * ng + nh * nh;
  if (cells > static_cast<double>(memory_budget)) {
    std::ostringstream msg;
    msg << "reduce_to_qap: cloud size " << cloud_size << " needs " << cells
        << " matrix cells, over the budget of " << memory_budget
        << "; pass a smaller cloud size or raise the budget";
    throw std::runtime_error(msg.str());
  }

  ReductionOutput out;
  out.lc = lc;
  out.params = {cloud_size, alpha, seed};
  const int N = static_cast<int>(cloud_size);
  out.qap.unweighted = true;
  out.qap.g = WeightedGraph(lc.n * N);
  out.qap.h = WeightedGraph(lc.n * lc.k * N);
  out.edge_sets.resize(lc.edges.size());

  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    auto [u, v] = lc.edges[e];
    // One substream per constraint edge, so patterns replay independently of
    // edge order.
    Rng rng(mix64(seed, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)));
    auto& pairs = out.edge_sets[e];
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (rng.uniform01() < alpha) pairs.emplace_back(i, j);
    for (auto [i, j] : pairs) {
      out.qap.g.set_edge(out.g_vertex(u, i), out.g_vertex(v, j), 1.0);
      for (auto [x, y] : lc.pi[e])
        out.qap.h.set_edge(out.h_vertex(u, x, i), out.h_vertex(v, y, j), 1.0);
    }
  }
  return out;
}

Assignment canonical_map(const ReductionOutput& out, const Labeling& lab) {
  if (static_cast<int>(lab.lambda.size()) != out.lc.n)
    throw std::invalid_argument("canonical_map: labeling length mismatch");
  const int N = static_cast<int>(out.params.cloud_size);
  std::vector<int> map(out.qap.g.n);
  for (int u = 0; u < out.lc.n; ++u) {
    const int x = lab.lambda[u];
    if (x < 0 || x >= out.lc.k)
      throw std::invalid_argument("canonical_map: label outside alphabet");
    for (int i = 0; i < N; ++i) map[out.g_vertex(u, i)] = out.h_vertex(u, x, i);
  }
  return make_assignment(out.qap, map);
}

EdgeCountReport edge_count_check(const ReductionOutput& out) {
  EdgeCountReport rep;
  rep.edges = out.g_edge_count();
  const double n2 = static_cast<double>(out.params.cloud_size) *
                    static_cast<double>(out.params.cloud_size);
  rep.expectation = out.params.alpha * static_cast<double>(out.lc.edges.size()) * n2;
  rep.pass = static_cast<double>(rep.edges) >= 0.5 * rep.expectation;
  return rep;
}

SoundnessReport soundness_probe(const ReductionOutput& out, long long budget,
                                std::uint64_t seed) {
  SoundnessReport rep;
  const int ng = out.qap.g.n, nh = out.qap.h.n;

  std::vector<int> pool(nh), map(ng);
  for (long long s = 0; s < budget; ++s) {
    Rng rng(mix64(seed, 0x70, static_cast<std::uint64_t>(s)));
    for (int i = 0; i < nh; ++i) pool[i] = i;
    for (int i = 0; i < ng; ++i) {
      int j = i + rng.below_int(nh - i);
      std::swap(pool[i], pool[j]);
      map[i] = pool[i];
    }
    rep.best_random = std::max(rep.best_random, value_qap(out.qap, map));
  }
  rep.samples = budget;

  double labelings = std::pow(static_cast<double>(out.lc.k), out.lc.n);
  if (labelings <= 1e4) {
    rep.canonical_exhaustive = true;
    Labeling lab;
    lab.lambda.assign(out.lc.n, 0);
    while (true) {
      rep.best_canonical = std::max(rep.best_canonical, canonical_map(out, lab).value);
      int pos = 0;
      while (pos < out.lc.n && ++lab.lambda[pos] == out.lc.k) lab.lambda[pos++] = 0;
      if (pos == out.lc.n) break;
    }
  } else {
    Labeling lab;
    lab.lambda.assign(out.lc.n, 0);
    rep.best_canonical = canonical_map(out, lab).value;
  }

  rep.opt_lc = brute_force_label_cover(out.lc).opt_fraction;
  const double n2 = static_cast<double>(out.params.cloud_size) *
                    static_cast<double>(out.params.cloud_size);
  rep.bound = out.params.alpha * static_cast<double>(out.lc.edges.size()) * n2 *
              (rep.opt_lc + 2.0 * out.params.alpha);

  long long maps = count_injective_maps(ng, nh);
  if (maps >= 0 && maps <= 10'000'000) {
    rep.exact_opt = brute_force_opt(out.qap).opt_value;
    rep.exact_opt_known = true;
  }
  const double best = std::max({rep.best_random, rep.best_canonical,
                                rep.exact_opt_known ? rep.exact_opt : 0.0});
  rep.bound_violated = best > rep.bound;
  return rep;
}

std::string label_cover_to_json(const LabelCoverInstance& lc) {
  nlohmann::json j;
  j["n"] = lc.n;
  j["k"] = lc.k;
  j["edges"] = nlohmann::json::array();
  j["pi"] = nlohmann::json::array();
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    j["edges"].push_back({lc.edges[e].first, lc.edges[e].second});
    nlohmann::json rel = nlohmann::json::array();
    for (auto [x, y] : lc.pi[e]) rel.push_back({x, y});
    j["pi"].push_back(std::move(rel));
  }
  return j.dump(2);
}

LabelCoverInstance label_cover_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LabelCoverInstance lc;
  lc.n = j.at("n").get<int>();
  lc.k = j.at("k").get<int>();
  for (const auto& e : j.at("edges"))
    lc.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  for (const auto& rel : j.at("pi")) {
    std::vector<std::pair<int, int>> r;
    for (const auto& p : rel) r.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    lc.pi.push_back(std::move(r));
  }
  lc.validate();
  return lc;
}

std::string reduction_sidecar_json(const ReductionOutput& out) {
  nlohmann::json j;
  j["cloud_size"] = out.params.cloud_size;
  j["alpha"] = out.params.alpha;
  j["seed"] = out.params.seed;
  j["g_edges"] = out.g_edge_count();
  nlohmann::json sizes = nlohmann::json::array();
  for (const auto& s : out.edge_sets) sizes.push_back(s.size());
  j["pattern_sizes"] = std::move(sizes);
  return j.dump(2);
}

}  // namespace qaplab

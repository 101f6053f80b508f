#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qaplab {

// Symmetric nonnegative weight matrix over a vertex set. A pair (u,v) is an
// edge when its weight is nonzero.
struct WeightedGraph {
  int n = 0;
  std::vector<double> w;  // n*n, row-major

  WeightedGraph() = default;
  explicit WeightedGraph(int n_)
      : n(n_), w(static_cast<std::size_t>(n_) * n_, 0.0) {}

  double& at(int u, int v) { return w[static_cast<std::size_t>(u) * n + v]; }
  double at(int u, int v) const {
    return w[static_cast<std::size_t>(u) * n + v];
  }

  void set_edge(int u, int v, double weight) {
    at(u, v) = weight;
    at(v, u) = weight;
  }

  double total_edge_weight() const;  // sum over unordered pairs u < v
  long long edge_count() const;      // nonzero unordered pairs u <= v
  bool has_nonzero_diagonal() const;

  // Throws std::invalid_argument on asymmetry, negative or non-finite
  // entries.
  void validate() const;
};

struct QapInstance {
  WeightedGraph g, h;
  // When true all weights are 0/1 and the objective counts unordered g-edges
  // landing on h-edges; otherwise the objective is the full ordered-pair sum.
  bool unweighted = false;

  void validate() const;  // also requires g.n <= h.n
};

struct Assignment {
  std::vector<int> map;  // length g.n, injective into [0, h.n)
  double value = 0.0;
};

// Throws std::invalid_argument if map is not an injective [0,n_h) vector of
// length n_g.
void check_injective(const std::vector<int>& map, int n_g, int n_h);

// Objective of an injective map. Weighted mode sums
// w_g(u,v) * w_h(map[u], map[v]) over all ordered pairs including u == v;
// unweighted mode counts unordered g-edges (u <= v) mapped onto h-edges.
double value_qap(const QapInstance& inst, const std::vector<int>& map);

Assignment make_assignment(const QapInstance& inst, std::vector<int> map);

enum class WeightLaw { uniform01, integer, sparse };

struct GeneratorSpec {
  int n = 0;
  WeightLaw law = WeightLaw::uniform01;
  double param = 0.0;  // integer: max value; sparse: edge probability
  std::uint64_t seed = 0;
};

// Symmetric random instance with zero diagonal, deterministic in the seed.
QapInstance random_instance(const GeneratorSpec& spec);
QapInstance random_instance(int n, WeightLaw law, double param,
                            std::uint64_t seed);

// Adds isolated vertices to g until both sides have the same size.
QapInstance pad_to_square(const QapInstance& inst);

std::string law_name(WeightLaw law);

}  // namespace qaplab

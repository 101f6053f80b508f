#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qaplab/instance_io.hpp"
#include "qaplab/rng.hpp"

using namespace qaplab;

TEST_CASE("single-vertex qaplib file") {
  QapInstance inst = read_qaplib("1\n0\n0\n");
  CHECK(inst.g.n == 1);
  CHECK(inst.h.n == 1);
  CHECK(inst.g.at(0, 0) == 0.0);
  CHECK(inst.h.at(0, 0) == 0.0);
}

TEST_CASE("hand-written 3x3 file round-trips through write/read") {
  const std::string text =
      "3\n"
      "0 2 1\n2 0 4\n1 4 0\n"
      "0 3 0\n3 0 5\n0 5 0\n";
  QapInstance inst = read_qaplib(text);
  std::string emitted = write_qaplib(inst);
  QapInstance again = read_qaplib(emitted);
  CHECK(again.g.w == inst.g.w);
  CHECK(again.h.w == inst.h.w);
  CHECK(write_qaplib(again) == emitted);
}

TEST_CASE("12x12 matrices arrive with the right row sums") {
  // Deterministic integer matrices; the expected row sums are recomputed
  // here directly from the emitted numbers.
  const int n = 12;
  Rng rng(777);
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
  std::vector<std::vector<long long>> b = a;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      a[u][v] = a[v][u] = static_cast<long long>(rng.below(50));
      b[u][v] = b[v][u] = static_cast<long long>(rng.below(50));
    }
  std::string text = std::to_string(n) + "\n";
  for (auto* m : {&a, &b})
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) text += std::to_string((*m)[u][v]) + " ";
      text += "\n";
    }
  QapInstance inst = read_qaplib(text);
  for (int u = 0; u < n; ++u) {
    long long want_a = 0, want_b = 0, got_a = 0, got_b = 0;
    for (int v = 0; v < n; ++v) {
      want_a += a[u][v];
      want_b += b[u][v];
      got_a += static_cast<long long>(inst.g.at(u, v));
      got_b += static_cast<long long>(inst.h.at(u, v));
    }
    CHECK(got_a == want_a);
    CHECK(got_b == want_b);
  }
}

TEST_CASE("token and value errors are rejected") {
  CHECK_THROWS_AS(read_qaplib("2\n0 1\n1 0\n0 1\n"), std::invalid_argument);  // short
  CHECK_THROWS_AS(read_qaplib("1\n-1\n0\n"), std::invalid_argument);          // negative
  CHECK_THROWS_AS(read_qaplib("1\n0\nx\n"), std::invalid_argument);           // non-numeric
  CHECK_THROWS_AS(read_qaplib(""), std::invalid_argument);
}

TEST_CASE("asymmetric matrices: reject or symmetrize per policy") {
  const std::string text = "2\n0 4\n2 0\n0 1\n1 0\n";
  CHECK_THROWS_AS(read_qaplib(text, AsymmetryPolicy::reject), std::invalid_argument);
  std::vector<std::string> warnings;
  QapInstance inst = read_qaplib(text, AsymmetryPolicy::symmetrize, &warnings);
  CHECK(inst.g.at(0, 1) == 3.0);
  CHECK(inst.g.at(1, 0) == 3.0);
  CHECK(warnings.size() == 1);
}

TEST_CASE("json format round-trips including the unweighted flag") {
  QapInstance inst = random_instance(3, WeightLaw::sparse, 0.7, 5);
  inst.unweighted = true;
  QapInstance again = instance_from_json(instance_to_json(inst));
  CHECK(again.g.w == inst.g.w);
  CHECK(again.h.w == inst.h.w);
  CHECK(again.unweighted == inst.unweighted);
}

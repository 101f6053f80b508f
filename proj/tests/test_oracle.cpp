#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qaplab/oracle.hpp"
#include "qaplab/rng.hpp"

using namespace qaplab;

TEST_CASE("n=1 brute force returns the single map") {
  QapInstance inst;
  inst.g = WeightedGraph(1);
  inst.h = WeightedGraph(1);
  inst.g.at(0, 0) = 4.0;
  inst.h.at(0, 0) = 0.5;
  ExactResult r = brute_force_opt(inst);
  CHECK(r.opt_map == std::vector<int>{0});
  CHECK(r.opt_value == 2.0);
  CHECK(r.enumerated == 1);
}

TEST_CASE("unweighted optimum detects isomorphism on equal edge counts") {
  // two labelings of the 4-cycle
  QapInstance iso;
  iso.unweighted = true;
  iso.g = WeightedGraph(4);
  iso.h = WeightedGraph(4);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 0}}) iso.g.set_edge(u, v, 1.0);
  for (auto [u, v] : {std::pair{0, 2}, {2, 1}, {1, 3}, {3, 0}}) iso.h.set_edge(u, v, 1.0);
  CHECK(brute_force_opt(iso).opt_value == 4.0);  // all edges preserved

  // 4-cycle vs star: same edge count, not isomorphic
  QapInstance non;
  non.unweighted = true;
  non.g = iso.g;
  non.h = WeightedGraph(4);
  for (int v = 1; v < 4; ++v) non.h.set_edge(0, v, 1.0);
  non.h.set_edge(1, 2, 1.0);
  CHECK(brute_force_opt(non).opt_value < 4.0);
}

TEST_CASE("brute force dominates random maps") {
  QapInstance inst = random_instance(5, WeightLaw::uniform01, 0, 13);
  ExactResult r = brute_force_opt(inst);
  CHECK(r.enumerated == 120);
  Rng rng(17);
  std::vector<int> map = {0, 1, 2, 3, 4};
  for (int t = 0; t < 1000; ++t) {
    rng.shuffle(map);
    CHECK(r.opt_value >= value_qap(inst, map));
  }
  CHECK(r.opt_value == value_qap(inst, r.opt_map));
}

TEST_CASE("injective enumeration covers rectangular instances") {
  QapInstance inst;
  inst.g = WeightedGraph(2);
  inst.h = WeightedGraph(4);
  inst.g.set_edge(0, 1, 1.0);
  inst.h.set_edge(2, 3, 5.0);
  ExactResult r = brute_force_opt(inst);
  CHECK(r.enumerated == 12);
  CHECK(r.opt_value == 10.0);
  CHECK(((r.opt_map == std::vector<int>{2, 3}) || (r.opt_map == std::vector<int>{3, 2})));
}

TEST_CASE("guards refuse oversized enumerations") {
  QapInstance inst;
  inst.g = WeightedGraph(12);
  inst.h = WeightedGraph(12);
  CHECK_THROWS_AS(brute_force_opt(inst), std::runtime_error);
  CHECK(count_injective_maps(12, 12) == 479001600);
  CHECK(count_injective_maps(30, 30) == -1);
}

TEST_CASE("label cover brute force on trivial and mixed instances") {
  LabelCoverInstance full;
  full.n = 2;
  full.k = 2;
  full.edges = {{0, 1}};
  full.pi = {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  CHECK(brute_force_label_cover(full).opt_fraction == 1.0);

  LabelCoverInstance empty = full;
  empty.pi = {{}};
  CHECK(brute_force_label_cover(empty).opt_fraction == 0.0);

  // two edges, only one jointly satisfiable
  LabelCoverInstance half;
  half.n = 3;
  half.k = 2;
  half.edges = {{0, 1}, {1, 2}};
  half.pi = {{{0, 0}}, {{1, 1}}};
  LcExactResult r = brute_force_label_cover(half);
  CHECK(r.opt_fraction == doctest::Approx(0.5));
  CHECK(r.enumerated == 8);
  CHECK(value_label_cover(half, r.labeling) == doctest::Approx(0.5));
}

TEST_CASE("integrality gap endpoints") {
  // all weight on one compatible edge pair: integral optimum matches the lp
  QapInstance tight;
  tight.g = WeightedGraph(3);
  tight.h = WeightedGraph(3);
  tight.g.set_edge(0, 1, 2.0);
  tight.h.set_edge(1, 2, 3.0);
  GapResult g1 = integrality_gap(tight);
  CHECK(g1.gap >= 1.0 - 1e-9);
  CHECK(g1.gap <= 1.0 + 1e-6);

  QapInstance zero;
  zero.g = WeightedGraph(3);
  zero.h = WeightedGraph(3);
  zero.g.set_edge(0, 1, 1.0);
  GapResult g2 = integrality_gap(zero);
  CHECK(g2.gap == 1.0);
  CHECK(!g2.infinite);
}

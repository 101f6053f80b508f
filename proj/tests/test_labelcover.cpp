#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qaplab/labelcover.hpp"
#include "qaplab/oracle.hpp"
#include "qaplab/rng.hpp"

using namespace qaplab;

namespace {

LabelCoverInstance single_edge_lc(int k, std::vector<std::pair<int, int>> rel) {
  LabelCoverInstance lc;
  lc.n = 2;
  lc.k = k;
  lc.edges = {{0, 1}};
  lc.pi = {std::move(rel)};
  return lc;
}

LabelCoverInstance xor_triangle() {
  LabelCoverInstance lc;
  lc.n = 3;
  lc.k = 2;
  lc.edges = {{0, 1}, {1, 2}, {2, 0}};
  lc.pi.assign(3, {{0, 1}, {1, 0}});
  return lc;
}

}  // namespace

TEST_CASE("full and empty relations score 1 and 0") {
  LabelCoverInstance full = single_edge_lc(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  LabelCoverInstance empty = single_edge_lc(2, {});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Labeling lab{{a, b}};
      CHECK(value_label_cover(full, lab) == 1.0);
      CHECK(value_label_cover(empty, lab) == 0.0);
    }
}

TEST_CASE("xor triangle with a hand labeling") {
  LabelCoverInstance lc = xor_triangle();
  Labeling lab{{0, 1, 0}};
  // edges (0,1) and (1,2) differ, edge (2,0) does not
  CHECK(value_label_cover(lc, lab) == doctest::Approx(2.0 / 3.0));
  // independent scan
  int sat = 0;
  for (int e = 0; e < 3; ++e) {
    auto [u, v] = lc.edges[e];
    if (lab.lambda[u] != lab.lambda[v]) ++sat;
  }
  CHECK(value_label_cover(lc, lab) == doctest::Approx(sat / 3.0));
}

TEST_CASE("value is undefined without edges") {
  LabelCoverInstance lc;
  lc.n = 2;
  lc.k = 2;
  CHECK_THROWS_AS(value_label_cover(lc, Labeling{{0, 0}}), std::invalid_argument);
}

TEST_CASE("alpha=1 reduction is the deterministic full pattern") {
  LabelCoverInstance lc = single_edge_lc(2, {{0, 0}});
  ReductionOutput out = reduce_to_qap(lc, 2, 1.0, 5);
  CHECK(out.g_edge_count() == 4);            // N^2 pairs
  CHECK(out.qap.g.edge_count() == 4);
  CHECK(out.qap.h.edge_count() == 4);        // one accepted label pair
  CHECK(out.qap.g.n == 4);
  CHECK(out.qap.h.n == 8);

  LabelCoverInstance multi = xor_triangle();
  ReductionOutput big = reduce_to_qap(multi, 3, 1.0, 5);
  CHECK(big.g_edge_count() == 3 * 9);
  CHECK(big.qap.g.edge_count() == 27);
  CHECK(big.qap.h.edge_count() == 27 * 2);  // two accepted pairs per edge
}

TEST_CASE("alpha outside (0,1] is rejected") {
  LabelCoverInstance lc = single_edge_lc(2, {{0, 0}});
  CHECK_THROWS_AS(reduce_to_qap(lc, 2, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_to_qap(lc, 2, 1.5, 1), std::invalid_argument);
}

TEST_CASE("reduction replays bitwise under the same seed") {
  LabelCoverInstance lc = single_edge_lc(2, {{0, 0}, {1, 1}});
  ReductionOutput a = reduce_to_qap(lc, 3, 0.5, 11);
  ReductionOutput b = reduce_to_qap(lc, 3, 0.5, 11);
  CHECK(a.qap.g.w == b.qap.g.w);
  CHECK(a.qap.h.w == b.qap.h.w);
  CHECK(a.edge_sets == b.edge_sets);

  // pattern substreams are keyed by the edge, not the iteration order
  ReductionOutput c = reduce_to_qap(lc, 3, 0.5, 12);
  CHECK(a.edge_sets != c.edge_sets);
}

TEST_CASE("guards refuse oversized reductions by naming the required size") {
  LabelCoverInstance lc = xor_triangle();
  CHECK_THROWS_AS(reduce_to_qap(lc, 0, 0.0, 1), std::runtime_error);  // built-in schedule
  CHECK_THROWS_AS(reduce_to_qap(lc, 100000, 0.5, 1), std::runtime_error);
}

TEST_CASE("canonical map of a satisfying labeling lands every pattern edge") {
  LabelCoverInstance lc = single_edge_lc(3, {{1, 2}});
  ReductionOutput out = reduce_to_qap(lc, 3, 0.5, 17);
  Labeling good{{1, 2}};
  Assignment a = canonical_map(out, good);
  CHECK(a.value == static_cast<double>(out.g_edge_count()));

  // a labeling violating the only constraint scores strictly less when
  // patterns exist (the relation misses the diagonal entirely)
  Labeling bad{{0, 0}};
  if (out.g_edge_count() > 0) CHECK(canonical_map(out, bad).value < a.value);
}

TEST_CASE("canonical map value counts satisfied patterns exactly") {
  LabelCoverInstance lc;
  lc.n = 3;
  lc.k = 2;
  lc.edges = {{0, 1}, {1, 2}};
  lc.pi = {{{0, 0}}, {{1, 1}}};
  ReductionOutput out = reduce_to_qap(lc, 3, 0.7, 23);
  // labeling satisfying only the first edge
  Labeling lab{{0, 0, 0}};
  Assignment a = canonical_map(out, lab);
  CHECK(a.value == static_cast<double>(out.edge_sets[0].size()));
}

TEST_CASE("edge count report matches the deterministic and trivial regimes") {
  LabelCoverInstance lc = single_edge_lc(2, {{0, 0}});
  ReductionOutput full = reduce_to_qap(lc, 4, 1.0, 1);
  EdgeCountReport rep = edge_count_check(full);
  CHECK(rep.edges == 16);
  CHECK(rep.expectation == doctest::Approx(16.0));
  CHECK(rep.pass);

  ReductionOutput tiny = reduce_to_qap(lc, 1, 0.5, 3);
  EdgeCountReport trep = edge_count_check(tiny);
  CHECK((trep.edges == 0 || trep.edges == 1));
  CHECK(trep.expectation == doctest::Approx(0.5));
}

TEST_CASE("soundness probe: satisfiable instances reach the full value") {
  LabelCoverInstance lc = single_edge_lc(2, {{0, 1}});
  ReductionOutput out = reduce_to_qap(lc, 2, 1.0, 29);
  SoundnessReport rep = soundness_probe(out, 50, 31);
  CHECK(rep.canonical_exhaustive);
  CHECK(rep.best_canonical == static_cast<double>(out.g_edge_count()));
  CHECK(rep.opt_lc == 1.0);
  CHECK(!rep.bound_violated);  // bound takes value alpha |E| N^2 (1 + 2 alpha)
  CHECK(rep.exact_opt_known);
  CHECK(rep.exact_opt == rep.best_canonical);
  CHECK(rep.best_random <= rep.exact_opt);
}

TEST_CASE("soundness probe: half-satisfiable two-edge instance") {
  // the two constraints pin the middle vertex to different labels, so only
  // one can hold at a time
  LabelCoverInstance lc;
  lc.n = 3;
  lc.k = 2;
  lc.edges = {{0, 1}, {1, 2}};
  lc.pi = {{{0, 0}}, {{1, 1}}};
  ReductionOutput out = reduce_to_qap(lc, 2, 1.0, 37);
  CHECK(brute_force_label_cover(lc).opt_fraction == doctest::Approx(0.5));
  SoundnessReport rep = soundness_probe(out, 20, 41);
  // canonical maps satisfy exactly one of the two pattern blocks
  CHECK(rep.best_canonical == doctest::Approx(out.g_edge_count() / 2.0));
}

TEST_CASE("label cover json round-trips") {
  LabelCoverInstance lc = xor_triangle();
  LabelCoverInstance again = label_cover_from_json(label_cover_to_json(lc));
  CHECK(again.n == lc.n);
  CHECK(again.k == lc.k);
  CHECK(again.edges == lc.edges);
  CHECK(again.pi == lc.pi);
}

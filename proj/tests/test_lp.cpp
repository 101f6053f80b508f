#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qaplab/lp.hpp"
#include "qaplab/oracle.hpp"
#include "qaplab/rng.hpp"

using namespace qaplab;

namespace {

// From-scratch constraint scan used as the feasibility oracle: re-derives
// every row from the definitions rather than from the built problem.
struct FeasibilityScan {
  double max_violation = 0.0;

  FeasibilityScan(const LpSolution& sol, LpVariant variant) {
    const int n = sol.n;
    auto track = [&](double lhs, double rhs) {
      if (variant == LpVariant::equality)
        max_violation = std::max(max_violation, std::abs(lhs - rhs));
      else
        max_violation = std::max(max_violation, lhs - rhs);
    };
    for (int u = 0; u < n; ++u) {
      double s = 0.0;
      for (int p = 0; p < n; ++p) s += sol.x_at(u, p);
      track(s, 1.0);
    }
    for (int p = 0; p < n; ++p) {
      double s = 0.0;
      for (int u = 0; u < n; ++u) s += sol.x_at(u, p);
      track(s, 1.0);
    }
    for (int v = 0; v < n; ++v)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          double s = 0.0;
          for (int u = 0; u < n; ++u) s += sol.y.at(u, p, v, q);
          track(s, sol.x_at(v, q));
        }
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int q = 0; q < n; ++q) {
          double s = 0.0;
          for (int p = 0; p < n; ++p) s += sol.y.at(u, p, v, q);
          track(s, sol.x_at(v, q));
        }
    for (int u = 0; u < n; ++u)
      for (int p = 0; p < n; ++p) {
        max_violation = std::max(max_violation, -sol.x_at(u, p));
        max_violation = std::max(max_violation, sol.x_at(u, p) - 1.0);
      }
  }
};

}  // namespace

TEST_CASE("n=1: the only assignment is forced") {
  QapInstance inst;
  inst.g = WeightedGraph(1);
  inst.h = WeightedGraph(1);
  inst.g.at(0, 0) = 3.0;
  inst.h.at(0, 0) = 2.0;
  LpSolution sol = solve_relaxation(inst, LpVariant::equality);
  CHECK(sol.x_at(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.y.at(0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.objective == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("n=2 all-ones off-diagonal: optimum 2") {
  QapInstance inst;
  inst.g = WeightedGraph(2);
  inst.h = WeightedGraph(2);
  inst.g.set_edge(0, 1, 1.0);
  inst.h.set_edge(0, 1, 1.0);
  LpSolution sol = solve_relaxation(inst, LpVariant::equality);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("relaxation dominates the identity assignment on a matched edge pair") {
  QapInstance inst;
  inst.g = WeightedGraph(3);
  inst.h = WeightedGraph(3);
  inst.g.set_edge(0, 1, 4.0);
  inst.h.set_edge(0, 1, 5.0);
  LpSolution sol = solve_relaxation(inst, LpVariant::equality);
  CHECK(sol.objective >= value_qap(inst, {0, 1, 2}) - 1e-7);
}

TEST_CASE("equality solutions have doubly stochastic marginals and pass the scan") {
  for (int t = 0; t < 6; ++t) {
    QapInstance inst = random_instance(4, t % 2 ? WeightLaw::uniform01 : WeightLaw::integer,
                                       t % 2 ? 0.0 : 3.0, mix64(0x17, t));
    LpSolution sol = solve_relaxation(inst, LpVariant::equality);
    FeasibilityScan scan(sol, LpVariant::equality);
    CHECK(scan.max_violation <= 1e-7);
    CHECK(sol.objective == doctest::Approx(lp_objective(inst, sol.y)).epsilon(1e-9));
  }
}

TEST_CASE("inequality optimum is at least the equality optimum") {
  for (int t = 0; t < 20; ++t) {
    QapInstance inst = random_instance(4, WeightLaw::integer, 3, mix64(0x18, t));
    double eq = solve_relaxation(inst, LpVariant::equality).objective;
    double ineq = solve_relaxation(inst, LpVariant::inequality).objective;
    CHECK(ineq >= eq - 1e-7);
  }
}

TEST_CASE("relaxation dominates brute force on random small instances") {
  for (int t = 0; t < 30; ++t) {
    const int n = 3 + t % 3;
    QapInstance inst = random_instance(n, WeightLaw::sparse, 0.6, mix64(0x19, t));
    double lp = solve_relaxation(inst, LpVariant::equality).objective;
    double opt = brute_force_opt(inst).opt_value;
    CHECK(lp >= opt - 1e-6);
  }
}

TEST_CASE("folded pair storage is structurally symmetric") {
  QapInstance inst = random_instance(3, WeightLaw::uniform01, 0, 5);
  LpSolution sol = solve_relaxation(inst, LpVariant::equality);
  for (int u = 0; u < 3; ++u)
    for (int p = 0; p < 3; ++p)
      for (int v = 0; v < 3; ++v)
        for (int q = 0; q < 3; ++q)
          CHECK(sol.y.at(u, p, v, q) == sol.y.at(v, q, u, p));
}

TEST_CASE("restriction: identity keep, full removal, and inequality feasibility") {
  QapInstance inst = random_instance(5, WeightLaw::integer, 3, 23);
  LpSolution sol = solve_relaxation(inst, LpVariant::equality);

  LpSolution same = restrict_solution(inst, sol, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4});
  CHECK(same.objective == doctest::Approx(sol.objective).epsilon(1e-9));
  CHECK(same.x == sol.x);

  LpSolution empty = restrict_solution(inst, sol, {}, {});
  CHECK(empty.objective == 0.0);
  for (double x : empty.x) CHECK(x == 0.0);

  LpSolution reduced = restrict_solution(inst, sol, {0, 2, 3}, {1, 2, 4});
  CHECK(reduced.objective <= sol.objective + 1e-9);
  FeasibilityScan scan(reduced, LpVariant::inequality);
  CHECK(scan.max_violation <= 1e-7);
}

TEST_CASE("integrality gap regression fixture") {
  // Smallest fractional instance found by seeded search: g is a perfect
  // matching on 4 vertices, h a triangle on {1,2,3}. Two disjoint g-edges
  // cannot both land on triangle edges (those pairwise intersect), so the
  // integral optimum keeps one edge (value 2) while the relaxation pays 3.
  QapInstance inst;
  inst.g = WeightedGraph(4);
  inst.h = WeightedGraph(4);
  inst.g.set_edge(0, 2, 1.0);
  inst.g.set_edge(1, 3, 1.0);
  inst.h.set_edge(1, 2, 1.0);
  inst.h.set_edge(1, 3, 1.0);
  inst.h.set_edge(2, 3, 1.0);
  GapResult gap = integrality_gap(inst);
  CHECK(gap.gap == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(gap.lp_star == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(gap.opt == doctest::Approx(2.0).epsilon(1e-9));

  // At n=3 the relaxation was tight on every instance a 900-trial seeded
  // search tried (sparse, integer, and uniform laws); spot-check the
  // strongest candidate family stays at ratio 1.
  QapInstance tight;
  tight.g = WeightedGraph(3);
  tight.h = WeightedGraph(3);
  tight.g.set_edge(0, 1, 1.0);
  tight.g.set_edge(1, 2, 1.0);
  tight.h.set_edge(0, 1, 1.0);
  GapResult g3 = integrality_gap(tight);
  CHECK(g3.gap == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("lp text export lists objective, rows, and bounds") {
  QapInstance inst = random_instance(2, WeightLaw::integer, 2, 3);
  std::string text = write_lp_text(inst, LpVariant::equality);
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
  std::string ineq = write_lp_text(inst, LpVariant::inequality);
  CHECK(ineq.find("<=") != std::string::npos);
}

TEST_CASE("build rejects non-square instances") {
  QapInstance inst;
  inst.g = WeightedGraph(2);
  inst.h = WeightedGraph(3);
  CHECK_THROWS_AS(build_aj_lp(inst, LpVariant::equality), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>

#include "qkroots/bethe.hpp"
#include "qkroots/vertex.hpp"

using namespace qk;

TEST_CASE("dilogarithm reference values") {
  struct Row {
    Cd w, expect;
  };
  const Row rows[] = {
      {Cd(0.5, 0), Cd(0.5822405264650125059026563, 0)},
      {Cd(0.3, 0.4), Cd(0.2665968667427404341611758, 0.461362891819108973189117)},
      {Cd(3, 0.5), Cd(1.811987306770073431570654, 3.376032085855236994402472)},
      {Cd(-2.5, 0), Cd(-1.698895841995014173048091, 0)},
      {Cd(0.9, 0), Cd(1.29971472300495872517106, 0)},
      {Cd(0.8, 0.75), Cd(0.6296579155598345197116685, 1.088081120897395132046428)},
  };
  for (const Row& r : rows) CHECK(std::abs(dilog(r.w) - r.expect) < 5e-15);
  const double pi = 3.14159265358979323846;
  CHECK(std::abs(dilog(Cd(1, 0)) - Cd(pi * pi / 6, 0)) < 1e-14);
  CHECK_THROWS_AS(dilog(Cd(1.5, 0)), std::domain_error);
}

TEST_CASE("exponentiated potential gradient sits on the period lattice") {
  BetheParams P;
  P.k = 2;
  P.n = 4;
  P.a = {Cd(0.7, 0.05), Cd(1.17, -0.08), Cd(1.63, 0.03), Cd(2.1, -0.06)};
  P.hb = Cd(2.0, 0.25);
  P.z = Cd(0.05, 0.015);
  HomotopyResult res = bethe_solve_homotopy(P);
  REQUIRE(res.complete);
  REQUIRE(res.solutions.size() == 6);
  double worst = 0;
  for (const auto& sol : res.solutions) {
    GradientCheck gc = yang_yang_gradient_check(P, sol);
    CHECK(gc.ok);
    worst = std::max(worst, gc.max_deviation);
  }
  CHECK(worst < 1e-4);

  // a perturbed root must leave the lattice
  std::vector<Cd> bad = res.solutions.front();
  bad[0] *= 1.05;
  GradientCheck gb = yang_yang_gradient_check(P, bad);
  CHECK_FALSE(gb.ok);
  CHECK(gb.max_deviation > 1e-2);
}

TEST_CASE("scalar solution asymptotics approach the dilogarithm targets") {
  AsymptoticsReport rep = scalar_vertex_asymptotics(0.7, 0.2, 2, {1e-2, 3e-3, 1e-3});
  const char* labels[3] = {"near_one", "near_zeta", "near_zeta_powered"};
  for (const char* label : labels) {
    std::vector<double> errs;
    for (const auto& c : rep.cases)
      if (c.label == label) errs.push_back(c.rel_err);
    REQUIRE(errs.size() == 3);
    CHECK(errs[1] < errs[0]);
    CHECK(errs[2] < errs[1]);
    CHECK(errs[2] < 2e-2);
  }
}

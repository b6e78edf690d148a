#include <doctest.h>

#include <cmath>

#include "qkroots/bethe.hpp"
#include "qkroots/qde.hpp"

using namespace qk;

namespace {
BetheParams quadratic_params() {
  BetheParams P;
  P.k = 1;
  P.n = 2;
  P.a = {Cd(1.1, 0.2), Cd(1.9, -0.3)};
  P.hb = Cd(1.7, 0.1);
  P.z = Cd(0.12, 0.04);
  return P;
}

BetheParams spin_chain_params() {
  BetheParams P;
  P.k = 2;
  P.n = 4;
  P.a = {Cd(0.7, 0.05), Cd(1.17, -0.08), Cd(1.63, 0.03), Cd(2.1, -0.06)};
  P.hb = Cd(2.0, 0.25);
  P.z = Cd(0.05, 0.015);
  return P;
}
}  // namespace

TEST_CASE("quadratic-case roots kill the residual") {
  BetheParams P = quadratic_params();
  std::vector<Cd> roots = bethe_solve_k1(P);
  REQUIRE(roots.size() == 2);
  for (const Cd& r : roots) CHECK(std::abs(bethe_residual(P, {r})[0]) < 1e-12);
}

TEST_CASE("at z = 0 the roots are the equivariant parameters") {
  BetheParams P = quadratic_params();
  P.z = Cd(0, 0);
  std::vector<Cd> roots = bethe_solve_k1(P);
  CHECK(pair_multisets_max_reldist(roots, P.a) < 1e-12);
}

TEST_CASE("roots match shift-matrix eigenvalues under hb_bethe = hb_qde^2") {
  Cd a1(1.1, 0.2), a2(1.9, -0.3), hbq(1.31, 0.038), z(0.12, 0.04);
  BetheParams P;
  P.k = 1;
  P.n = 2;
  P.a = {a1, a2};
  P.hb = hbq * hbq;
  P.z = z;
  std::vector<Cd> roots = bethe_solve_k1(P);
  ModelImage<Cd> im;
  im.N = 2;
  im.compose_q = true;
  im.a1 = a1;
  im.a2 = a2;
  im.hb = hbq;
  auto e = eig2x2(mcal_at(im, z));
  CHECK(pair_multisets_max_reldist(roots, {e.first, e.second}) < 1e-10);
}

TEST_CASE("homotopy finds the full solution set for k=2, n=4") {
  BetheParams P = spin_chain_params();
  HomotopyResult res = bethe_solve_homotopy(P);
  CHECK(res.complete);
  CHECK(res.expected == 6);
  CHECK(static_cast<long>(res.solutions.size()) == 6);
  CHECK(res.max_residual < 1e-10);
  CHECK(res.min_pairwise > 0.3);
}

TEST_CASE("powered-parameter roots produce the powered-system closure") {
  BetheParams P = quadratic_params();
  BetheParams Ppow = P;
  Ppow.a = {P.a[0] * P.a[0], P.a[1] * P.a[1]};
  Ppow.hb = P.hb * P.hb;
  Ppow.z = P.z * P.z;
  std::vector<Cd> yroots = bethe_solve_k1(Ppow);
  double worst = 0;
  for (const Cd& y : yroots) {
    Cd x = std::sqrt(y);
    worst = std::max(worst, bethe_powered_residual(P, {x}, 2));
    worst = std::max(worst, bethe_powered_residual(P, {-x}, 2));
  }
  CHECK(worst < 1e-12);

  // a base root does not satisfy the powered system
  std::vector<Cd> base = bethe_solve_k1(P);
  CHECK(bethe_powered_residual(P, {base[0]}, 2) > 1e-2);
}

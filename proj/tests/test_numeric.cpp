#include <doctest.h>

#include <cmath>

#include "qkroots/numeric.hpp"

using namespace qk;

TEST_CASE("companion-matrix roots of a cubic") {
  // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
  std::vector<Cd> coeffs{Cd(-6, 0), Cd(11, 0), Cd(-6, 0), Cd(1, 0)};
  std::vector<Cd> roots = poly_roots_companion(coeffs);
  REQUIRE(roots.size() == 3);
  double d = pair_multisets_max_reldist(roots, {Cd(1, 0), Cd(2, 0), Cd(3, 0)});
  CHECK(d < 1e-10);
}

TEST_CASE("2x2 eigenvalues") {
  Mat<Cd> m(2, 2, Cd(0, 0));
  m(0, 0) = Cd(1, 0);
  m(0, 1) = Cd(2, 0);
  m(1, 0) = Cd(3, 0);
  m(1, 1) = Cd(4, 0);
  auto e = eig2x2(m);
  // eigenvalues (5 +- sqrt(33))/2
  double s = std::sqrt(33.0);
  double d = pair_multisets_max_reldist({e.first, e.second}, {Cd((5 + s) / 2, 0), Cd((5 - s) / 2, 0)});
  CHECK(d < 1e-12);
}

TEST_CASE("multiset pairing distance") {
  std::vector<Cd> a{Cd(1, 0), Cd(2, 0), Cd(3, 0)};
  std::vector<Cd> b{Cd(3, 0), Cd(1, 0), Cd(2, 0)};
  CHECK(pair_multisets_max_reldist(a, b) == 0.0);
  b[0] = Cd(3.1, 0);
  CHECK(pair_multisets_max_reldist(a, b) == doctest::Approx(0.1 / 3.1).epsilon(1e-10));
  CHECK_THROWS_AS(pair_multisets_max_reldist(a, {Cd(1, 0)}), std::invalid_argument);
}

TEST_CASE("roots of unity") {
  for (long p : {2L, 3L, 5L, 7L}) {
    Cd z = root_of_unity(p);
    CHECK(std::abs(cd_pow(z, p) - Cd(1, 0)) < 1e-14);
    for (long k = 1; k < p; ++k) CHECK(std::abs(cd_pow(z, k) - Cd(1, 0)) > 0.5);
  }
  CHECK(std::abs(root_of_unity(4, 2) - Cd(-1, 0)) < 1e-15);
}

TEST_CASE("deterministic rng and model draws") {
  Rng r1(42), r2(42);
  for (int i = 0; i < 20; ++i) {
    CHECK(r1.uniform(0, 1) == r2.uniform(0, 1));
    CHECK(r1.uniform_int(0, 100) == r2.uniform_int(0, 100));
  }
  Rng r3(43);
  bool same = true;
  for (int i = 0; i < 20; ++i)
    if (r1.uniform(0, 1) != r3.uniform(0, 1)) same = false;
  CHECK_FALSE(same);

  Rng rd(7);
  for (int t = 0; t < 50; ++t) {
    RationalModelDraw d = draw_rational_model(rd);
    CHECK(d.a1 != d.a2);
    CHECK(d.hb != 0);
    CHECK(d.hb != 1);
    CHECK(d.hb != -1);
    CHECK(d.a1 != 0);
    CHECK(d.a2 != 0);
  }

  Rng ra(5);
  for (int t = 0; t < 50; ++t) {
    Cd z = ra.annulus(0.5, 2.0);
    CHECK(std::abs(z) >= 0.5);
    CHECK(std::abs(z) <= 2.0);
  }
}

TEST_CASE("hessenberg eigenvalues match companion roots") {
  std::vector<Cd> coeffs{Cd(2, 1), Cd(-3, 0.5), Cd(0.25, -1), Cd(1, 0)};
  std::vector<Cd> roots = poly_roots_companion(coeffs);
  double worst = 0;
  for (const Cd& r : roots) {
    Cd v = coeffs[0] + coeffs[1] * r + coeffs[2] * r * r + coeffs[3] * r * r * r;
    worst = std::max(worst, std::abs(v));
  }
  CHECK(worst < 1e-9);
}

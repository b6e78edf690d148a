#include <doctest.h>

#include "qkroots/numeric.hpp"
#include "qkroots/pcurvature.hpp"
#include "qkroots/qde.hpp"

using namespace qk;

namespace {
using RF = RatFun<Fp>;
using SP = SPoly<Fp>;

Mat<RF> random_connection(Rng& rng, long N, long p) {
  Mat<RF> A(N, N, RF::constant(Fp(0, p)));
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) {
      Poly<Fp> num;
      for (int d = 0; d <= 2; ++d) num.c.push_back(Fp(rng.uniform_int(0, p - 1), p));
      num.trim();
      Poly<Fp> den;
      if (rng.uniform_int(0, 1)) {
        den.c.push_back(Fp(rng.uniform_int(0, p - 1), p));
        den.c.push_back(Fp(1, p));
      } else {
        den.c.push_back(Fp(1, p));
      }
      A(i, j) = RF(num, den);
    }
  return A;
}
}  // namespace

TEST_CASE("operator composition obeys the Leibniz rule") {
  long p = 5;
  RF one = RF::constant(Fp(1, p));
  RF z = RF::monomial(Fp(1, p), 1);

  DiffOp<Fp> dop;  // plain d
  dop.n = 1;
  dop.coeff.push_back(SMat<Fp>::zero(1, 1, detail::spoly_const(one)));
  dop.coeff.push_back(SMat<Fp>::identity(1, detail::spoly_const(one)));

  DiffOp<Fp> zmul;  // multiplication by z
  zmul.n = 1;
  zmul.coeff.push_back(SMat<Fp>::zero(1, 1, detail::spoly_const(one)));
  zmul.coeff[0](0, 0) = detail::spoly_const(z);

  DiffOp<Fp> c = diffop_compose(dop, zmul);  // d o z = z d + 1
  CHECK(c.order() == 1);
  CHECK(c.coeff[0](0, 0) == detail::spoly_const(one));
  CHECK(c.coeff[1](0, 0) == detail::spoly_const(z));

  DiffOp<Fp> zd;  // z d
  zd.n = 1;
  zd.coeff.push_back(SMat<Fp>::zero(1, 1, detail::spoly_const(one)));
  zd.coeff.push_back(SMat<Fp>::zero(1, 1, detail::spoly_const(one)));
  zd.coeff[1](0, 0) = detail::spoly_const(z);
  DiffOp<Fp> zd2 = diffop_compose(zd, zd);  // (zd)^2 = z^2 d^2 + z d
  CHECK(zd2.order() == 2);
  CHECK(zd2.coeff[0].is_zero());
  CHECK(zd2.coeff[1](0, 0) == detail::spoly_const(z));
  CHECK(zd2.coeff[2](0, 0) == detail::spoly_const(z * z));

  DiffOp<Fp> idop = diffop_identity<Fp>(1, one);
  DiffOp<Fp> li = diffop_compose(zd, idop);
  CHECK(li.order() == 1);
  CHECK(li.coeff[0].is_zero());
  CHECK(li.coeff[1](0, 0) == detail::spoly_const(z));
}

TEST_CASE("p-th derivative annihilates rational functions") {
  for (long p : {2L, 3L, 5L}) {
    for (long n = 0; n <= 3 * p; ++n)
      CHECK(kis_zero(rational_p_th_derivative(RF::monomial(Fp(1, p), n), p)));
    RF invz(Poly<Fp>::constant(Fp(1, p)), Poly<Fp>::monomial(Fp(1, p), 1));
    CHECK(kis_zero(rational_p_th_derivative(invz, p)));
  }
}

TEST_CASE("p-th power structure of the twisted derivative") {
  SUBCASE("zero connection") {
    long p = 3;
    Mat<RF> A(2, 2, RF::constant(Fp(0, p)));
    CHECK(p_curvature(A, p).m0.is_zero());
  }
  SUBCASE("constant scalar: top term is (sc)^p") {
    long p = 3;
    Fp cv(2, p);
    Mat<RF> A(1, 1, RF::constant(cv));
    PCurvature<Fp> cp = p_curvature(A, p);
    CHECK(cp.m0(0, 0) == SP::monomial(RF::constant(cv * cv * cv), 3));
  }
  SUBCASE("p = 2 closed form: sA' + s^2 A^2") {
    long p = 2;
    Rng rng(11);
    Mat<RF> A = random_connection(rng, 2, p);
    PCurvature<Fp> cp = p_curvature(A, p);
    Mat<RF> Ad = A;
    for (auto& e : Ad.a) e = e.derivative();
    Mat<RF> A2 = A * A;
    for (long i = 0; i < 2; ++i)
      for (long j = 0; j < 2; ++j)
        CHECK(cp.m0(i, j) == SP::monomial(Ad(i, j), 1) + SP::monomial(A2(i, j), 2));
  }
}

TEST_CASE("structure and logarithmic identity on random connections") {
  for (long p : {2L, 3L, 5L, 7L}) {
    for (long N : {2L, 3L}) {
      Rng rng(100 * p + N);
      for (int t = 0; t < 3; ++t) {
        Mat<RF> A = random_connection(rng, N, p);
        CHECK_NOTHROW(p_curvature(A, p));
        LogIdentityReport rep = log_identity_check(A, p);
        CHECK(rep.ok);
      }
    }
  }
}

TEST_CASE("interior coefficients of row p vanish mod p") {
  std::vector<Int> r4 = stirling_row(4);
  REQUIRE(r4.size() == 4);
  CHECK(r4[0] == 1);
  CHECK(r4[1] == 7);
  CHECK(r4[2] == 6);
  CHECK(r4[3] == 1);
  std::vector<Int> r5 = stirling_row(5);
  REQUIRE(r5.size() == 5);
  CHECK(r5[0] == 1);
  CHECK(r5[1] == 15);
  CHECK(r5[2] == 25);
  CHECK(r5[3] == 10);
  CHECK(r5[4] == 1);
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) CHECK(stirling_row_check(p).ok);
}

TEST_CASE("binomial expansion valuation bound") {
  SUBCASE("commuting diagonal case, p = 3") {
    Mat<Rat> a(2, 2, Rat(0)), b(2, 2, Rat(0));
    a(0, 0) = 2;
    a(1, 1) = -1;
    b(0, 0) = 3;
    b(1, 1) = 5;
    PiLemmaReport r = pi_lemma_check(3, a, b);
    CHECK(r.ok);
    CHECK(r.required == 4);
    CHECK(r.valuation >= 4);
  }
  SUBCASE("random draws at p = 3 and p = 5") {
    for (long p : {3L, 5L}) {
      Rng rng(7 * p);
      for (int t = 0; t < 5; ++t) {
        long n = 2 + rng.uniform_int(0, 1);
        Mat<Rat> al(n, n, Rat(0)), be(n, n, Rat(0));
        for (auto& x : al.a) x = Rat(rng.uniform_int(-5, 5));
        for (auto& x : be.a) x = Rat(rng.uniform_int(-5, 5));
        PiLemmaReport r = pi_lemma_check(p, al, be);
        CHECK(r.ok);
        CHECK(r.valuation >= p + 1);
      }
    }
  }
  SUBCASE("p = 2 is rejected") { CHECK_THROWS_AS(pi_lemma_check(2, Mat<Rat>(2, 2, Rat(0)), Mat<Rat>(2, 2, Rat(0))), std::invalid_argument); }
}

TEST_CASE("pencil spectra agree with the powered-argument form") {
  CHECK(pencil_spectrum_check(2, 0, 1, 1).ok);
  for (long u1 = 0; u1 < 3; ++u1)
    for (long u2 = 0; u2 < 3; ++u2) {
      if (u1 == u2) continue;
      for (long h = 1; h < 3; ++h) {
        PencilSpectrumReport r = pencil_spectrum_check(3, u1, u2, h);
        CHECK(r.trace_ok);
        CHECK(r.ok);
      }
    }
  Rng rng(99);
  for (int t = 0; t < 5; ++t) {
    long u1 = rng.uniform_int(0, 4), u2 = rng.uniform_int(0, 4), h = rng.uniform_int(1, 4);
    if (u1 == u2) u2 = (u2 + 1) % 5;
    CHECK(pencil_spectrum_check(5, u1, u2, h).ok);
  }
}

TEST_CASE("root-of-unity digit extraction matches the pencil reference") {
  SUBCASE("digit table for the canonical p = 3 instance") {
    long p = 3;
    CycloNum one(p, Rat(1));
    CycloNum lambda = CycloNum::zeta(p) - one;
    ModelImage<CycloNum> im;
    im.N = 2;
    im.compose_q = true;
    im.a1 = one + CycloNum(p, Rat(1)) * lambda;
    im.a2 = one + CycloNum(p, Rat(2)) * lambda;
    im.hb = one + CycloNum(p, Rat(1)) * lambda;
    MatSeries<CycloNum> prod = iterated_product_series(im, CycloNum::zeta(p), p, true, 3);
    prod.c[0] = prod.c[0] - Mat<CycloNum>::identity(2, one);
    long want1[2][2] = {{2, 1}, {2, 1}};
    long want2[2][2] = {{1, 2}, {1, 2}};
    for (long i = 0; i < 2; ++i)
      for (long j = 0; j < 2; ++j) {
        CHECK(lambda_digit_at(prod.c[1](i, j), p) == want1[i][j]);
        CHECK(lambda_digit_at(prod.c[2](i, j), p) == want2[i][j]);
        CHECK(lambda_digit_at(prod.c[0](i, j), p) == 0);
        CHECK(lambda_digit_at(prod.c[3](i, j), p) == 0);
      }
    // the non-primitive embedding q = zeta^2 pushes everything above order p
    MatSeries<CycloNum> prod2 = iterated_product_series(im, CycloNum::zeta(p, 2), p, true, 3);
    prod2.c[0] = prod2.c[0] - Mat<CycloNum>::identity(2, one);
    for (long d = 1; d <= 2; ++d)
      for (long i = 0; i < 2; ++i)
        for (long j = 0; j < 2; ++j) CHECK(lambda_digit_at(prod2.c[d](i, j), p) == 0);
  }
  SUBCASE("full reduction reports") {
    RootReductionReport r3 = root_reduction_check(3, 1, 2, 1, 3);
    CHECK(r3.ok);
    CHECK(r3.extraction_ok);
    CHECK(r3.powered_vanishing_ok);
    CHECK(r3.first_mismatch_order == -1);
    RootReductionReport r2 = root_reduction_check(2, 0, 1, 1, 2);
    CHECK(r2.ok);
    CHECK(r2.extraction_ok);
    CHECK(r2.powered_vanishing_ok);
  }
}

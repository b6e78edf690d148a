#include <doctest.h>

#include "qkroots/cyclo.hpp"
#include "qkroots/dual.hpp"
#include "qkroots/matrix.hpp"
#include "qkroots/poly.hpp"
#include "qkroots/prime_field.hpp"
#include "qkroots/ratfun.hpp"
#include "qkroots/rational.hpp"

using namespace qk;

TEST_CASE("rational helpers") {
  CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
  CHECK(rat_pow(Rat(2), -2) == Rat(1, 4));
  CHECK_THROWS_AS(rat_pow(Rat(0), -1), std::domain_error);
  CHECK(padic_valuation(Rat(12), 2) == 2);
  CHECK(padic_valuation(Rat(5, 8), 2) == -3);
  CHECK(padic_valuation(Rat(-9, 5), 3) == 2);
  CHECK(is_prime(2));
  CHECK(is_prime(23));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(15));
  CHECK(rat_from_string("-4/6") == Rat(-2, 3));
  CHECK_THROWS_AS(rat_from_string("x"), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic and gcd") {
  Poly<Rat> a(std::vector<Rat>{-1, 0, 0, 0, 1});        // q^4 - 1
  Poly<Rat> b(std::vector<Rat>{-1, 0, 0, 0, 0, 0, 1});  // q^6 - 1
  Poly<Rat> g = poly_gcd(a, b);
  REQUIRE(g.deg() == 2);
  CHECK(g.c[0] == Rat(-1));
  CHECK(g.c[1] == Rat(0));
  CHECK(g.c[2] == Rat(1));

  Poly<Rat> prod = a * b;
  CHECK(prod.deg() == 10);
  CHECK(poly_gcd(prod, a) == a);

  Poly<Rat> zero;
  CHECK(zero.is_zero());
  CHECK((a - a).is_zero());
}

TEST_CASE("rational function normalization") {
  // (q^2 - 1)/(q - 1) reduces to q + 1
  RatFun<Rat> f(Poly<Rat>(std::vector<Rat>{-1, 0, 1}), Poly<Rat>(std::vector<Rat>{-1, 1}));
  CHECK(f.den.deg() == 0);
  CHECK(f.num.deg() == 1);
  CHECK(f == RatFun<Rat>(Poly<Rat>(std::vector<Rat>{1, 1}), Poly<Rat>::constant(Rat(1))));

  RatFun<Rat> z = RatFun<Rat>::monomial(Rat(1), 1);
  RatFun<Rat> g = (z * z - RatFun<Rat>::constant(Rat(1))) / (z - RatFun<Rat>::constant(Rat(1)));
  CHECK(g == z + RatFun<Rat>::constant(Rat(1)));
  CHECK_THROWS_AS(z / RatFun<Rat>::constant(Rat(0)), std::domain_error);
}

TEST_CASE("matrix inverse and characteristic polynomial") {
  Mat<Rat> m(2, 2, Rat(0));
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 3;
  m(1, 1) = 4;
  Mat<Rat> inv = mat_inverse(m);
  CHECK(inv * m == Mat<Rat>::identity(2, Rat(1)));
  Poly<Rat> chi = mat_charpoly(m);
  // X^2 - 5X - 2
  REQUIRE(chi.deg() == 2);
  CHECK(chi.c[2] == Rat(1));
  CHECK(chi.c[1] == Rat(-5));
  CHECK(chi.c[0] == Rat(-2));

  Mat<Rat> sing(2, 2, Rat(1));
  CHECK_THROWS_AS(mat_inverse(sing), std::domain_error);
}

TEST_CASE("cyclotomic field arithmetic") {
  for (long p : {2L, 3L, 5L, 7L}) {
    CycloNum zeta = CycloNum::zeta(p);
    CycloNum acc = zeta;
    for (long k = 1; k < p; ++k) acc = acc * zeta;
    CHECK(acc == CycloNum(p, Rat(1)));  // zeta^p = 1
    CycloNum sum(p, Rat(1));
    acc = CycloNum(p, Rat(1));
    for (long k = 1; k < p; ++k) {
      acc = acc * zeta;
      sum = sum + acc;
    }
    CHECK(kis_zero(sum));  // 1 + zeta + ... + zeta^{p-1} = 0
    CycloNum x = CycloNum(p, Rat(3, 7)) * zeta - CycloNum(p, Rat(2));
    CHECK(x * cyclo_invert(x) == CycloNum(p, Rat(1)));
  }
}

TEST_CASE("uniformizer valuation and digits") {
  // lambda = zeta_p - 1; the prime p factors as lambda^{p-1} times a unit.
  for (long p : {2L, 3L, 5L}) {
    CycloNum x(p, Rat(p));
    CHECK(lambda_valuation(x) == p - 1);
  }
  long p = 3;
  CycloNum one(p, Rat(1));
  CycloNum lam = CycloNum::zeta(p) - one;
  CHECK(lambda_valuation(lam) == 1);
  CHECK(lambda_digit_at(lam, 1) == 1);
  CHECK(lambda_digit_at(lam * lam, 2) == 1);
  // 3 = lambda^2 * u with u = -1 mod lambda, so its order-2 digit is -1 = 2.
  CHECK(lambda_valuation(CycloNum(p, Rat(3))) == 2);
  CHECK(lambda_digit_at(CycloNum(p, Rat(3)), 2) == 2);
  CHECK(lambda_digit_at(CycloNum(p, Rat(-3)), 2) == 1);
  // asking above the valuation is an error; below returns 0
  CHECK(lambda_digit_at(lam * lam, 1) == 0);
  CHECK(lambda_digit_at(lam, 0) == 0);
  CHECK_THROWS_AS(lambda_digit_at(lam, 2), std::domain_error);
  // division by lambda shifts the valuation down by one
  CycloNum q = cyclo_div_lambda(lam * lam);
  CHECK(lambda_valuation(q) == 1);
}

TEST_CASE("prime field arithmetic") {
  for (long p : {2L, 3L, 5L, 7L}) {
    for (long v = 1; v < p; ++v) {
      Fp x(v, p);
      CHECK((x * x.inverse()).v == 1);
      Fp acc(1, p);
      for (long k = 0; k < p - 1; ++k) acc = acc * x;
      CHECK(acc.v == 1);  // little Fermat
    }
    CHECK_THROWS_AS(Fp(0, p).inverse(), std::domain_error);
  }
  CHECK((Fp(2, 5) + Fp(4, 5)).v == 1);
  CHECK((Fp(2, 5) - Fp(4, 5)).v == 3);
}

TEST_CASE("first-order jets") {
  using D = Dual<Rat>;
  D eps(Rat(0), Rat(1));
  D x = D::constant(Rat(3)) + eps;  // 3 + eps
  D y = x * x;                      // 9 + 6 eps
  CHECK(y.a == Rat(9));
  CHECK(y.b == Rat(6));
  D inv = D::constant(Rat(1)) / x;  // 1/3 - eps/9
  CHECK(inv.a == Rat(1, 3));
  CHECK(inv.b == Rat(-1, 9));
  CHECK_THROWS_AS(D::constant(Rat(1)) / eps, std::domain_error);
}

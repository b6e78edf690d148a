#include <doctest.h>

#include "qkroots/cyclo.hpp"
#include "qkroots/qde.hpp"

using namespace qk;

TEST_CASE("model construction and shift matrix at z = 0") {
  Model m = build_model("tpp1", Rat(2), Rat(3), Rat(5));
  ModelImage<QFun> P = model_image(m, qfun_const(Rat(1)));
  Mat<QFun> L = model_L(P);
  Rat d = Rat(1, 5) - Rat(5);  // hb^{-1} - hb
  CHECK(L(0, 0) == qfun_const(Rat(2)));
  CHECK(L(0, 1) == qfun_const(Rat(0)));
  CHECK(L(1, 0) == qfun_const(-Rat(2) * d));
  CHECK(L(1, 1) == qfun_const(Rat(3)));

  CHECK_THROWS_AS(build_model("tpp1", Rat(2), Rat(2), Rat(5)), std::invalid_argument);
  CHECK_THROWS_AS(build_model("tpp1", Rat(2), Rat(3), Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(build_model("nope", Rat(2), Rat(3), Rat(5)), std::invalid_argument);
}

TEST_CASE("scalar fundamental solution first coefficient") {
  // Psi_1 = (hb - 1)/(q - 1) for the scalar model
  Model m = build_model("tpp0", Rat(0), Rat(0), Rat(5));
  MatSeries<QFun> psi = solve_fundamental(m, 3);
  QFun expect(Poly<Rat>(std::vector<Rat>{4}), Poly<Rat>(std::vector<Rat>{-1, 1}));
  CHECK(psi.c[1](0, 0) == expect);
  CHECK(psi.c[0](0, 0) == qfun_const(Rat(1)));
}

TEST_CASE("fundamental solution satisfies the shift equation") {
  // q^d Psi_d L = sum_k M_k Psi_{d-k}, order by order
  Model m = build_model("tpp1", Rat(2), Rat(3), Rat(5));
  long D = 4;
  MatSeries<QFun> psi = solve_fundamental(m, D);
  MatSeries<QFun> M = expand_M(m, D);
  ModelImage<QFun> P = model_image(m, qfun_const(Rat(1)));
  Mat<QFun> L = model_L(P);
  QFun q = qfun_var();
  QFun qd = qfun_const(Rat(1));
  for (long d = 0; d <= D; ++d) {
    Mat<QFun> lhs = qd * psi.c[d] * L;
    Mat<QFun> rhs = Mat<QFun>::zero(2, 2, qfun_const(Rat(1)));
    for (long k = 0; k <= d; ++k) rhs = rhs + M.c[k] * psi.c[d - k];
    CHECK(lhs == rhs);
    qd = qd * q;
  }
}

TEST_CASE("characteristic identity of the iterated product") {
  Model m1 = build_model("tpp1", Rat(2), Rat(3), Rat(5));
  Model m0 = build_model("tpp0", Rat(0), Rat(0), Rat(5));

  SUBCASE("p = 1 over the rationals") {
    ModelImage<Rat> P = model_image(m1, Rat(1));
    CHECK(characteristic_residual(iterated_product_exact(P, Rat(1), 1, true), P, 1).is_zero());
    ModelImage<Rat> S = model_image(m0, Rat(1));
    CHECK(characteristic_residual(iterated_product_exact(S, Rat(1), 1, true), S, 1).is_zero());
  }
  SUBCASE("p = 2, both product orders") {
    CycloNum z2 = CycloNum::zeta(2);
    ModelImage<CycloNum> P = model_image(m1, kone(z2));
    CHECK(characteristic_residual(iterated_product_exact(P, z2, 2, true), P, 2).is_zero());
    CHECK(characteristic_residual(iterated_product_exact(P, z2, 2, false), P, 2).is_zero());
  }
  SUBCASE("p = 3") {
    CycloNum z3 = CycloNum::zeta(3);
    ModelImage<CycloNum> P = model_image(m1, kone(z3));
    CHECK(characteristic_residual(iterated_product_exact(P, z3, 3, true), P, 3).is_zero());
  }
  SUBCASE("perturbed product violates the identity") {
    CycloNum z2 = CycloNum::zeta(2);
    ModelImage<CycloNum> P = model_image(m1, kone(z2));
    Mat<RatFun<CycloNum>> prod = iterated_product_exact(P, z2, 2, true);
    prod(0, 0) = prod(0, 0) + RatFun<CycloNum>::constant(kone(z2));
    CHECK_FALSE(characteristic_residual(prod, P, 2).is_zero());
  }
}

TEST_CASE("first-order expansion picks the doubled-h convention") {
  Mat<RatFun<CohK3>> C = cohomological_limit();
  CHECK(C == cohomological_reference(2));
  CHECK_FALSE(C == cohomological_reference(1));
}

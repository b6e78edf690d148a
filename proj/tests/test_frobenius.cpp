#include <doctest.h>

#include "qkroots/frobenius.hpp"

using namespace qk;

namespace {
Rat entry_at_zeta2(const MatSeries<CycloNum>& s, long d, long i, long j) { return s.c[d](i, j).c[0]; }
}  // namespace

TEST_CASE("alignment factor for the matrix model") {
  Model m = build_model("tpp1", Rat(2), Rat(3), Rat(5));
  IntertwinerData data = compute_intertwiner(m, 2, 2);
  CHECK(data.W(0, 0) == qfun_const(Rat(1)));
  CHECK(data.W(0, 1).is_zero());
  CHECK(data.W(1, 1) == qfun_const(Rat(1)));
  CHECK(data.W(1, 0) == qfun_const(Rat(1296, 125)));
}

TEST_CASE("intertwiner coefficients at zeta_2 are pinned") {
  Model m = build_model("tpp1", Rat(2), Rat(3), Rat(5));
  IntertwinerData data = compute_intertwiner(m, 2, 4);
  MatSeries<CycloNum> red = reduce_at_zeta(data.F, 2);
  CHECK(entry_at_zeta2(red, 0, 0, 0) == Rat(1));
  CHECK(entry_at_zeta2(red, 0, 0, 1) == Rat(0));
  CHECK(entry_at_zeta2(red, 1, 0, 0) == Rat(109212, 3125));
  CHECK(entry_at_zeta2(red, 1, 0, 1) == Rat(72, 25));
  CHECK(entry_at_zeta2(red, 1, 1, 0) == Rat(1573104, 15625));
  CHECK(entry_at_zeta2(red, 1, 1, 1) == Rat(924, 125));
  CHECK(entry_at_zeta2(red, 2, 0, 0) == Rat(109756092, 78125));
  CHECK(entry_at_zeta2(red, 2, 0, 1) == Rat(43992, 625));
  CHECK(entry_at_zeta2(red, 2, 1, 0) == Rat(-48905964144L, 1953125));
  CHECK(entry_at_zeta2(red, 2, 1, 1) == Rat(-11279028, 15625));
}

TEST_CASE("pole certificate separates the intertwiner from raw solutions") {
  Model m = build_model("tpp1", Rat(2), Rat(3), Rat(5));
  for (long p : {2L, 3L}) {
    IntertwinerData data = compute_intertwiner(m, p, 2 * p);
    PoleCertificate certF = pole_certificate(data.F, p);
    CHECK(certF.pass);
    PoleCertificate certPsi = pole_certificate(data.psi, p);
    CHECK_FALSE(certPsi.pass);
    CHECK(certPsi.first_bad_order == p);
    IntertwinerData wrong = compute_intertwiner(m, p, 2 * p, FrobSubstitution::kP);
    PoleCertificate certWrong = pole_certificate(wrong.F, p);
    CHECK_FALSE(certWrong.pass);
    CHECK(certWrong.first_bad_order == p);
  }
}

TEST_CASE("scalar model pole certificate") {
  Model m = build_model("tpp0", Rat(0), Rat(0), Rat(5));
  for (long p : {2L, 3L}) {
    IntertwinerData data = compute_intertwiner(m, p, 2 * p);
    CHECK(pole_certificate(data.F, p).pass);
    CHECK_FALSE(pole_certificate(data.psi, p).pass);
  }
}

TEST_CASE("reduced intertwiner conjugates the powered model into the product") {
  Model m = build_model("tpp1", Rat(2), Rat(3), Rat(5));
  ConjugationData conj = conjugation_check(m, 2, 4);
  CHECK(conj.zero);
}

TEST_CASE("radial limits agree with the algebraic reduction") {
  Model m = build_model("tpp1", Rat(2), Rat(3), Rat(5));
  IntertwinerData data = compute_intertwiner(m, 2, 4);
  MatSeries<CycloNum> red = reduce_at_zeta(data.F, 2);
  double dist = radial_agreement_distance(data.F, red, 2, 1e-6);
  CHECK(dist < 2e-5);
}

TEST_CASE("scalar closed forms: plain differs at order p, adjusted matches") {
  SUBCASE("pinned coefficient at p = 2") {
    ScalarSeries<CycloNum> fred = scalar_intertwiner_at_zeta(Rat(5), 2, 6);
    ScalarClosedForms forms = tpp0_closed_form(Rat(5), 2, 6);
    CHECK(fred.c[2].c[0] == Rat(8));
    CHECK(forms.plain.c[2].c[0] == Rat(2));
    CHECK(forms.adjusted.c[2].c[0] == Rat(8));
    CHECK(fred == forms.adjusted);
    CHECK_FALSE(fred == forms.plain);
  }
  SUBCASE("adjusted form matches for p in {2, 3} to order 6") {
    for (long p : {2L, 3L}) {
      ScalarSeries<CycloNum> fred = scalar_intertwiner_at_zeta(Rat(5), p, 6);
      ScalarClosedForms forms = tpp0_closed_form(Rat(5), p, 6);
      CHECK(fred == forms.adjusted);
      bool plain_differs_at_p = false;
      for (long d = 0; d <= 6; ++d)
        if (!(fred.c[d] == forms.plain.c[d])) {
          plain_differs_at_p = (d == p);
          break;
        }
      CHECK(plain_differs_at_p);
    }
  }
}

#include <doctest.h>

#include "qkroots/rational.hpp"
#include "qkroots/series.hpp"

using namespace qk;

namespace {
ScalarSeries<Rat> geometric(long D) {
  // 1/(1-z) = 1 + z + z^2 + ...
  ScalarSeries<Rat> s(D, Rat(1));
  s.c[0] = Rat(1);
  if (D >= 1) s.c[1] = Rat(-1);
  return series_inverse(s);
}
}  // namespace

TEST_CASE("series multiplication truncates exactly") {
  ScalarSeries<Rat> g = geometric(6);
  for (long d = 0; d <= 6; ++d) CHECK(g.c[d] == Rat(1));
  ScalarSeries<Rat> one_minus(6, Rat(1));
  one_minus.c[0] = Rat(1);
  one_minus.c[1] = Rat(-1);
  ScalarSeries<Rat> prod = g * one_minus;
  CHECK(prod.c[0] == Rat(1));
  for (long d = 1; d <= 6; ++d) CHECK(prod.c[d] == Rat(0));
}

TEST_CASE("series exp and log are mutually inverse") {
  ScalarSeries<Rat> t(5, Rat(1));
  t.c[1] = Rat(1, 2);
  t.c[2] = Rat(-1, 3);
  t.c[3] = Rat(2);
  ScalarSeries<Rat> e = series_exp(t);
  CHECK(e.c[0] == Rat(1));
  ScalarSeries<Rat> back = series_log(e);
  for (long d = 0; d <= 5; ++d) CHECK(back.c[d] == t.c[d]);
}

TEST_CASE("substituting z^p reindexes coefficients") {
  ScalarSeries<Rat> s(2, Rat(1));
  s.c[0] = Rat(3);
  s.c[1] = Rat(5);
  s.c[2] = Rat(7);
  ScalarSeries<Rat> sub = series_substitute_power(s, 3, 7);
  CHECK(sub.c[0] == Rat(3));
  CHECK(sub.c[3] == Rat(5));
  CHECK(sub.c[6] == Rat(7));
  CHECK(sub.c[1] == Rat(0));
  CHECK(sub.c[2] == Rat(0));
  CHECK(sub.c[4] == Rat(0));
}

TEST_CASE("rational powers of a series") {
  // ((1-z)^2)^(1/2) = 1 - z
  ScalarSeries<Rat> base(5, Rat(1));
  base.c[0] = Rat(1);
  base.c[1] = Rat(-2);
  base.c[2] = Rat(1);
  ScalarSeries<Rat> half = series_pow_rational(base, 1, 2);
  CHECK(half.c[0] == Rat(1));
  CHECK(half.c[1] == Rat(-1));
  for (long d = 2; d <= 5; ++d) CHECK(half.c[d] == Rat(0));

  // (1-z)^(-1/1) = geometric series
  ScalarSeries<Rat> lin(4, Rat(1));
  lin.c[0] = Rat(1);
  lin.c[1] = Rat(-1);
  ScalarSeries<Rat> inv = series_pow_rational(lin, -1, 1);
  for (long d = 0; d <= 4; ++d) CHECK(inv.c[d] == Rat(1));
}

TEST_CASE("matrix series inverse") {
  MatSeries<Rat> s(4, 2, Rat(1));
  s.c[0] = Mat<Rat>::identity(2, Rat(1));
  s.c[1](0, 1) = Rat(2);
  s.c[2](1, 0) = Rat(-3);
  s.c[3](0, 0) = Rat(1, 5);
  MatSeries<Rat> inv = mat_series_inverse(s);
  MatSeries<Rat> prod = s * inv;
  CHECK(prod.c[0] == Mat<Rat>::identity(2, Rat(1)));
  for (long d = 1; d <= 4; ++d) CHECK(prod.c[d] == Mat<Rat>::zero(2, 2, Rat(1)));
}

TEST_CASE("pochhammer series telescopes") {
  // phi(x) = prod_{i>=0} (1 - x q^i z); phi(x) / phi(xq) = 1 - x z
  Rat x(3), q(1, 2), xq = x * q;
  ScalarSeries<Rat> top = pochhammer_series(x, q, 5);
  ScalarSeries<Rat> bot = pochhammer_series(xq, q, 5);
  ScalarSeries<Rat> ratio = top * series_inverse(bot);
  CHECK(ratio.c[0] == Rat(1));
  CHECK(ratio.c[1] == -x);
  for (long d = 2; d <= 5; ++d) CHECK(ratio.c[d] == Rat(0));
}

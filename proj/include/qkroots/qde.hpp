#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qkroots/dual.hpp"
#include "qkroots/matrix.hpp"
#include "qkroots/ratfun.hpp"
#include "qkroots/series.hpp"

namespace qk {

// Rational functions in one variable q over Q.
using QFun = RatFun<Rat>;
inline QFun qfun_var() { return QFun::monomial(Rat(1), 1); }
inline QFun qfun_const(const Rat& r) { return QFun::constant(r); }

// The two bundled difference modules: a scalar one with
//   M(z, q) = (1 - z) / (1 - hb z),
// and a rank-2 one with M(z, q) = Mcal(z q), where
//   Mcal(w) = [[a1 (w-1),        a2 w (hb^{-1}-hb)],
//              [a1 (hb^{-1}-hb), a2 (w-1)        ]] / (hb^2 w - 1).
struct Model {
  std::string name;
  long N = 1;
  Rat a1, a2, hb;
  bool compose_q = false;  // the matrix model reads its argument as z*q
};

inline Model build_model(const std::string& name, const Rat& a1, const Rat& a2, const Rat& hb) {
  Model m;
  m.name = name;
  m.a1 = a1;
  m.a2 = a2;
  m.hb = hb;
  if (hb == 0) throw std::invalid_argument("build_model: hb must be nonzero");
  if (name == "tpp0") {
    m.N = 1;
    m.compose_q = false;
  } else if (name == "tpp1") {
    m.N = 2;
    m.compose_q = true;
    if (a1 == 0 || a2 == 0) throw std::invalid_argument("build_model: a1, a2 must be nonzero");
    if (a1 == a2) throw std::invalid_argument("build_model: a1, a2 must be distinct");
  } else {
    throw std::invalid_argument("build_model: unknown model '" + name + "'");
  }
  return m;
}

// The model parameters embedded into a working field K.
template <class K>
struct ModelImage {
  long N = 1;
  bool compose_q = false;
  K a1, a2, hb;
};

template <class K>
ModelImage<K> model_image(const Model& m, const K& sample) {
  ModelImage<K> im;
  im.N = m.N;
  im.compose_q = m.compose_q;
  im.a1 = krat_embed(sample, m.a1);
  im.a2 = krat_embed(sample, m.a2);
  im.hb = krat_embed(sample, m.hb);
  return im;
}

// Raise every parameter to the e-th power (hb must be invertible in K).
template <class K>
ModelImage<K> model_image_power(const ModelImage<K>& im, long e) {
  ModelImage<K> r = im;
  auto kpow = [](const K& x, long n) {
    K acc = kone(x), b = x;
    while (n > 0) {
      if (n & 1) acc = acc * b;
      b = b * b;
      n >>= 1;
    }
    return acc;
  };
  r.a1 = kpow(im.a1, e);
  r.a2 = kpow(im.a2, e);
  r.hb = kpow(im.hb, e);
  return r;
}

namespace detail {

template <class K>
K kpow_generic(const K& x, long e) {
  if (e < 0) return kone(x) / kpow_generic(x, -e);
  K acc = kone(x), b = x;
  while (e > 0) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

// Linear part Mcal(w) = (B0 + B1 w) / (hb^2 w - 1) of the rank-2 model.
template <class K>
void mcal_linear_parts(const ModelImage<K>& P, Mat<K>& B0, Mat<K>& B1) {
  K zero = kzero(P.hb), one = kone(P.hb);
  K d = one / P.hb - P.hb;
  B0 = Mat<K>::zero(2, 2, one);
  B1 = Mat<K>::zero(2, 2, one);
  B0(0, 0) = zero - P.a1;
  B0(1, 0) = P.a1 * d;
  B0(1, 1) = zero - P.a2;
  B1(0, 0) = P.a1;
  B1(0, 1) = P.a2 * d;
  B1(1, 1) = P.a2;
}

}  // namespace detail

// z-series of the underlying single-argument matrix Mcal(c * z) to order D.
template <class K>
MatSeries<K> mcal_series(const ModelImage<K>& P, const K& c, long D) {
  K one = kone(P.hb), zero = kzero(P.hb);
  MatSeries<K> s(D, P.N, one);
  if (P.N == 1) {
    // (1 - cz) / (1 - hb cz): coefficient k>=1 is hb^{k-1}(hb-1) c^k.
    s.c[0](0, 0) = one;
    K cpow = c;
    K hpow = one;
    for (long k = 1; k <= D; ++k) {
      s.c[static_cast<size_t>(k)](0, 0) = hpow * (P.hb - one) * cpow;
      hpow = hpow * P.hb;
      cpow = cpow * c;
    }
    return s;
  }
  Mat<K> B0 = Mat<K>::zero(2, 2, one), B1 = B0;
  detail::mcal_linear_parts(P, B0, B1);
  // 1/(hb^2 w - 1) = -sum_k hb^{2k} w^k, with w = c z.
  K h2 = P.hb * P.hb;
  K h2pow = one;   // hb^{2k}
  K h2prev = one;  // hb^{2(k-1)}
  K cpow = one;    // c^k
  for (long k = 0; k <= D; ++k) {
    Mat<K> coef = h2pow * B0;
    if (k >= 1) coef = coef + h2prev * B1;
    s.c[static_cast<size_t>(k)] = cpow * (zero - one) * coef;
    h2prev = h2pow;
    h2pow = h2pow * h2;
    cpow = cpow * c;
  }
  return s;
}

// Exact rational-function form of Mcal(c * z) over K(z).
template <class K>
Mat<RatFun<K>> mcal_ratfun(const ModelImage<K>& P, const K& c) {
  using RF = RatFun<K>;
  K one = kone(P.hb), zero = kzero(P.hb);
  if (P.N == 1) {
    Mat<RF> m(1, 1, RF::constant(one));
    Poly<K> num(std::vector<K>{one, zero - c});
    Poly<K> den(std::vector<K>{one, zero - P.hb * c});
    m(0, 0) = RF(num, den);
    return m;
  }
  K d = one / P.hb - P.hb;
  Poly<K> den(std::vector<K>{zero - one, P.hb * P.hb * c});
  Mat<RF> m(2, 2, RF::constant(one));
  m(0, 0) = RF(Poly<K>(std::vector<K>{zero - P.a1, P.a1 * c}), den);
  m(0, 1) = RF(Poly<K>(std::vector<K>{zero, P.a2 * c * d}), den);
  m(1, 0) = RF(Poly<K>(std::vector<K>{P.a1 * d}), den);
  m(1, 1) = RF(Poly<K>(std::vector<K>{zero - P.a2, P.a2 * c}), den);
  return m;
}

// Value of Mcal at a point w of K.
template <class K>
Mat<K> mcal_at(const ModelImage<K>& P, const K& w) {
  K one = kone(P.hb), zero = kzero(P.hb);
  if (P.N == 1) {
    Mat<K> m(1, 1, one);
    m(0, 0) = (one - w) / (one - P.hb * w);
    return m;
  }
  Mat<K> B0 = Mat<K>::zero(2, 2, one), B1 = B0;
  detail::mcal_linear_parts(P, B0, B1);
  K den = P.hb * P.hb * w - one;
  return (one / den) * (B0 + w * B1);
}

// z-series of M(z * mult, q) to order D: the scalar model ignores q; the
// rank-2 model reads Mcal(z * mult * q).
template <class K>
MatSeries<K> model_m_series(const ModelImage<K>& P, const K& q, const K& mult, long D) {
  return P.compose_q ? mcal_series(P, mult * q, D) : mcal_series(P, mult, D);
}

// Coefficients of M(z, q) over Q(q).
inline MatSeries<QFun> expand_M(const Model& m, long D) {
  QFun one = qfun_const(Rat(1));
  ModelImage<QFun> P = model_image(m, one);
  return model_m_series(P, qfun_var(), one, D);
}

// Constant term L = M(0, q) of the model, over a field K.
template <class K>
Mat<K> model_L(const ModelImage<K>& P) {
  K one = kone(P.hb), zero = kzero(P.hb);
  if (P.N == 1) {
    Mat<K> L(1, 1, one);
    return L;
  }
  Mat<K> L = Mat<K>::zero(2, 2, one);
  K d = one / P.hb - P.hb;
  L(0, 0) = P.a1;
  L(1, 0) = zero - P.a1 * d;
  L(1, 1) = P.a2;
  return L;
}

// Fundamental solution Psi(z) with Psi(0) = I of Psi(z q) L = M(z, q) Psi(z),
// solved order by order over Q(q): the degree-d coefficient satisfies the
// Sylvester equation q^d Psi_d L - L Psi_d = sum_{k=1}^{d} M_k Psi_{d-k}.
inline MatSeries<QFun> solve_fundamental(const Model& m, long D) {
  QFun one = qfun_const(Rat(1)), q = qfun_var();
  ModelImage<QFun> P = model_image(m, one);
  long N = m.N;
  MatSeries<QFun> M = expand_M(m, D);
  Mat<QFun> L = model_L(P);
  MatSeries<QFun> psi = MatSeries<QFun>::identity(D, N, one);
  QFun qd = one;
  for (long d = 1; d <= D; ++d) {
    qd = qd * q;
    Mat<QFun> R = Mat<QFun>::zero(N, N, one);
    for (long k = 1; k <= d; ++k) R = R + M.c[static_cast<size_t>(k)] * psi.c[static_cast<size_t>(d - k)];
    long NN = N * N;
    Mat<QFun> sys = Mat<QFun>::zero(NN, NN, one);
    Mat<QFun> rhs = Mat<QFun>::zero(NN, 1, one);
    for (long i = 0; i < N; ++i)
      for (long j = 0; j < N; ++j) {
        long row = i * N + j;
        rhs(row, 0) = R(i, j);
        for (long s = 0; s < N; ++s) {
          sys(row, i * N + s) = sys(row, i * N + s) + qd * L(s, j);
          sys(row, s * N + j) = sys(row, s * N + j) - L(i, s);
        }
      }
    Mat<QFun> x = mat_solve(sys, rhs);
    Mat<QFun> Pd = Mat<QFun>::zero(N, N, one);
    for (long i = 0; i < N; ++i)
      for (long j = 0; j < N; ++j) Pd(i, j) = x(i * N + j, 0);
    psi.c[static_cast<size_t>(d)] = Pd;
  }
  return psi;
}

// Product of the p shift factors M(z q^j, q) for j = 0..p-1, as a z-series.
// Ascending order multiplies left-to-right starting at j = 0.
template <class K>
MatSeries<K> iterated_product_series(const ModelImage<K>& P, const K& q, long p, bool ascending, long D) {
  MatSeries<K> prod = MatSeries<K>::identity(D, P.N, kone(P.hb));
  for (long t = 0; t < p; ++t) {
    long j = ascending ? t : (p - 1 - t);
    K mult = detail::kpow_generic(q, j);
    prod = prod * model_m_series(P, q, mult, D);
  }
  return prod;
}

// Same product in closed form over K(z).
template <class K>
Mat<RatFun<K>> iterated_product_exact(const ModelImage<K>& P, const K& q, long p, bool ascending) {
  using RF = RatFun<K>;
  Mat<RF> prod = Mat<RF>::identity(P.N, RF::constant(kone(P.hb)));
  for (long t = 0; t < p; ++t) {
    long j = ascending ? t : (p - 1 - t);
    K mult = detail::kpow_generic(q, j);
    K arg = P.compose_q ? mult * q : mult;
    prod = prod * mcal_ratfun(P, arg);
  }
  return prod;
}

// Residual of the closed-form characteristic identity for the p-fold product:
// for the rank-2 model,
//   (1 - z^p hb^{2p}) det(X - Prod)
//     - [ (X - a1^p)(X - a2^p) - z^p hb^{2p} (X - a1^p hb^{-2p})(X - a2^p hb^{-2p}) ],
// and for the scalar model the rank-1 analogue with weight hb^p.  The base
// parameters (not raised to p) are passed in.
template <class K>
Poly<RatFun<K>> characteristic_residual(const Mat<RatFun<K>>& prod, const ModelImage<K>& base, long p) {
  using RF = RatFun<K>;
  K kone_s = kone(base.hb);
  RF one = RF::constant(kone_s);
  RF zp = RF::monomial(kone_s, p);
  Poly<RF> chi = mat_charpoly(prod);
  auto cpow = [&](const K& x, long e) { return RF::constant(detail::kpow_generic(x, e)); };
  if (base.N == 1) {
    RF hp = cpow(base.hb, p);
    Poly<RF> lin_one(std::vector<RF>{RF::constant(kzero(kone_s)) - one, one});
    Poly<RF> lin_h(std::vector<RF>{RF::constant(kzero(kone_s)) - (one / hp), one});
    Poly<RF> target = lin_one - Poly<RF>::constant(zp * hp) * lin_h;
    Poly<RF> lead = Poly<RF>::constant(one - zp * hp);
    return lead * chi - target;
  }
  RF a1p = cpow(base.a1, p), a2p = cpow(base.a2, p);
  RF h2p = cpow(base.hb, 2 * p);
  auto lin = [&](const RF& root) {
    return Poly<RF>(std::vector<RF>{RF::constant(kzero(kone_s)) - root, one});
  };
  Poly<RF> target = lin(a1p) * lin(a2p) - Poly<RF>::constant(zp * h2p) * (lin(a1p / h2p) * lin(a2p / h2p));
  Poly<RF> lead = Poly<RF>::constant(one - zp * h2p);
  return lead * chi - target;
}

// ---------------------------------------------------------------------------
// Cohomological limit: first-order behaviour of the rank-2 model near q = 1
// along a1 = 1 + eps u1, a2 = 1 + eps u2, hb = 1 + eps h, q = 1 + eps.

// Nested coefficient tower Q(u1)(u2)(h).
using CohK1 = RatFun<Rat>;
using CohK2 = RatFun<CohK1>;
using CohK3 = RatFun<CohK2>;

inline CohK3 coh_const(const Rat& r) {
  return CohK3::constant(CohK2::constant(CohK1::constant(r)));
}
inline CohK3 coh_u1() { return CohK3::constant(CohK2::constant(CohK1::monomial(Rat(1), 1))); }
inline CohK3 coh_u2() { return CohK3::constant(CohK2::monomial(CohK1::constant(Rat(1)), 1)); }
inline CohK3 coh_h() { return CohK3::monomial(CohK2::constant(CohK1::constant(Rat(1))), 1); }

// d/d eps at eps = 0 of M(z, 1 + eps) under the lifted parameters, as an
// exact matrix of rational functions in z over Q(u1, u2, h).
inline Mat<RatFun<CohK3>> cohomological_limit() {
  using B = Dual<CohK3>;
  CohK3 c0 = coh_const(Rat(0)), c1 = coh_const(Rat(1));
  B a1(c1, coh_u1()), a2(c1, coh_u2()), hb(c1, coh_h()), q(c1, c1);
  B one = B::constant(c1), zero = B::constant(c0);
  B d = one / hb - hb;
  // w = z q as a polynomial in z over the jet ring.
  Poly<B> w(std::vector<B>{zero, q});
  Poly<B> wm1 = w - Poly<B>::constant(one);
  Poly<B> den = Poly<B>::constant(hb * hb) * w - Poly<B>::constant(one);
  Poly<B> num[2][2] = {
      {Poly<B>::constant(a1) * wm1, Poly<B>::constant(a2 * d) * w},
      {Poly<B>::constant(a1 * d), Poly<B>::constant(a2) * wm1}};
  auto part = [&](const Poly<B>& f, bool deriv) {
    Poly<CohK3> r;
    for (const auto& coef : f.c) r.c.push_back(deriv ? coef.b : coef.a);
    r.trim();
    return r;
  };
  Poly<CohK3> den_a = part(den, false), den_b = part(den, true);
  Mat<RatFun<CohK3>> C(2, 2, RatFun<CohK3>::constant(c0));
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) {
      Poly<CohK3> na = part(num[i][j], false), nb = part(num[i][j], true);
      RatFun<CohK3> value(na, den_a);
      RatFun<CohK3> expect =
          (i == j) ? RatFun<CohK3>::constant(c1) : RatFun<CohK3>::constant(c0);
      if (!(value == expect)) throw std::logic_error("cohomological_limit: zeroth order is not the identity");
      C(i, j) = RatFun<CohK3>(nb * den_a - na * den_b, den_a * den_a);
    }
  return C;
}

// Reference first-order connection shape [[u1, 0],[0, u2]] - (scale*h) / (z-1)
// * [[z, z],[1, z]], parameterized by the integer factor multiplying h.
inline Mat<RatFun<CohK3>> cohomological_reference(long h_scale) {
  CohK3 c0 = coh_const(Rat(0)), c1 = coh_const(Rat(1));
  CohK3 sh = coh_const(Rat(h_scale)) * coh_h();
  Poly<CohK3> zm1(std::vector<CohK3>{c0 - c1, c1});
  Poly<CohK3> zpoly(std::vector<CohK3>{c0, c1});
  Mat<RatFun<CohK3>> A(2, 2, RatFun<CohK3>::constant(c0));
  A(0, 0) = RatFun<CohK3>::constant(coh_u1()) - RatFun<CohK3>(Poly<CohK3>::constant(sh) * zpoly, zm1);
  A(0, 1) = RatFun<CohK3>::constant(c0) - RatFun<CohK3>(Poly<CohK3>::constant(sh) * zpoly, zm1);
  A(1, 0) = RatFun<CohK3>::constant(c0) - RatFun<CohK3>(Poly<CohK3>::constant(sh), zm1);
  A(1, 1) = RatFun<CohK3>::constant(coh_u2()) - RatFun<CohK3>(Poly<CohK3>::constant(sh) * zpoly, zm1);
  return A;
}

}  // namespace qk

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qkroots/cyclo.hpp"
#include "qkroots/matrix.hpp"
#include "qkroots/piadic.hpp"
#include "qkroots/poly.hpp"
#include "qkroots/prime_field.hpp"
#include "qkroots/qde.hpp"
#include "qkroots/ratfun.hpp"
#include "qkroots/series.hpp"

namespace qk {

// Entries of differential-operator coefficients: polynomials in the pencil
// variable s whose coefficients are rational functions of z.
template <class K>
using SPoly = Poly<RatFun<K>>;
template <class K>
using SMat = Mat<SPoly<K>>;

// Linear differential operator sum_k coeff[k] * d_z^k acting on vector
// functions of z; coefficient matrices may carry the pencil variable s.
template <class K>
struct DiffOp {
  long n = 0;
  std::vector<SMat<K>> coeff;  // coeff[k] multiplies the k-th z-derivative

  long order() const { return static_cast<long>(coeff.size()) - 1; }
};

namespace detail {

template <class K>
SPoly<K> spoly_const(const RatFun<K>& f) {
  return SPoly<K>::constant(f);
}

// d/dz, acting on the z-rational coefficients of an s-polynomial.
template <class K>
SPoly<K> spoly_z_derivative(const SPoly<K>& f) {
  SPoly<K> d = f;
  for (auto& c : d.c) c = c.derivative();
  d.trim();
  return d;
}

template <class K>
SMat<K> smat_z_derivative(const SMat<K>& m) {
  SMat<K> d = m;
  for (auto& e : d.a) e = spoly_z_derivative(e);
  return d;
}

inline long binom_long(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

template <class K>
DiffOp<K> diffop_identity(long n, const RatFun<K>& one_z) {
  DiffOp<K> op;
  op.n = n;
  op.coeff.push_back(SMat<K>::identity(n, detail::spoly_const(one_z)));
  return op;
}

// Weyl-algebra product: (A d^i) o (B d^j) = sum_m C(i,m) A B^(m) d^(i+j-m).
template <class K>
DiffOp<K> diffop_compose(const DiffOp<K>& L1, const DiffOp<K>& L2) {
  if (L1.n != L2.n) throw std::invalid_argument("diffop_compose: dimension mismatch");
  long n = L1.n;
  long K1 = L1.order(), K2 = L2.order();
  SPoly<K> sample;
  for (const auto& m : L1.coeff)
    for (const auto& e : m.a)
      if (!kis_zero(e)) sample = e;
  for (const auto& m : L2.coeff)
    for (const auto& e : m.a)
      if (!kis_zero(e)) sample = e;
  if (sample.is_zero()) {
    DiffOp<K> z;
    z.n = n;
    z.coeff.assign(1, SMat<K>::zero(n, n, sample));
    return z;
  }
  DiffOp<K> r;
  r.n = n;
  r.coeff.assign(static_cast<size_t>(K1 + K2) + 1, SMat<K>::zero(n, n, sample));
  for (long i = 0; i <= K1; ++i) {
    if (L1.coeff[static_cast<size_t>(i)].is_zero()) continue;
    for (long j = 0; j <= K2; ++j) {
      SMat<K> b = L2.coeff[static_cast<size_t>(j)];
      for (long m = 0; m <= i; ++m) {
        if (!b.is_zero()) {
          SPoly<K> f = kfrom_int(sample, detail::binom_long(i, m));
          if (!kis_zero(f)) {
            SMat<K> term = L1.coeff[static_cast<size_t>(i)] * b;
            size_t idx = static_cast<size_t>(i + j - m);
            r.coeff[idx] = r.coeff[idx] + f * term;
          }
        }
        if (m < i) b = detail::smat_z_derivative(b);
      }
    }
  }
  while (r.coeff.size() > 1 && r.coeff.back().is_zero()) r.coeff.pop_back();
  return r;
}

// First-order operator rho(z) d + M(z,s).
template <class K>
DiffOp<K> diffop_first_order(const SMat<K>& m0, const RatFun<K>& rho) {
  DiffOp<K> op;
  op.n = m0.n;
  op.coeff.push_back(m0);
  SPoly<K> r = detail::spoly_const(rho);
  SMat<K> lead = SMat<K>::zero(m0.n, m0.n, r);
  for (long i = 0; i < m0.n; ++i) lead(i, i) = r;
  op.coeff.push_back(lead);
  return op;
}

// Embed a z-rational matrix as the s-linear coefficient matrix s*A.
template <class K>
SMat<K> pencil_times_s(const Mat<RatFun<K>>& A) {
  SPoly<K> sample = SPoly<K>::monomial(A.sample(), 1);
  SMat<K> r = SMat<K>::zero(A.n, A.m, sample);
  for (long i = 0; i < A.n; ++i)
    for (long j = 0; j < A.m; ++j) r(i, j) = SPoly<K>::monomial(A(i, j), 1);
  return r;
}

template <class K>
struct PCurvature {
  SMat<K> m0;                    // the derivative-free p-th power coefficient
  std::vector<SMat<K>> orders;   // full operator (d + sA)^p, all derivative orders
};

// (d + sA)^p over a field of characteristic p: the intermediate derivative
// orders must vanish identically and the top order must be the identity.
template <class K>
PCurvature<K> p_curvature(const Mat<RatFun<K>>& A, long p) {
  if (!is_prime(p)) throw std::invalid_argument("p_curvature: p must be prime");
  RatFun<K> one_z = kone(A.sample());
  DiffOp<K> nabla = diffop_first_order(pencil_times_s(A), one_z);
  DiffOp<K> acc = diffop_identity<K>(A.n, one_z);
  for (long i = 0; i < p; ++i) acc = diffop_compose(nabla, acc);
  if (acc.order() != p) throw std::runtime_error("p_curvature: unexpected operator order");
  for (long k = 1; k < p; ++k)
    if (!acc.coeff[static_cast<size_t>(k)].is_zero())
      throw std::runtime_error("p_curvature: derivative order " + std::to_string(k) +
                               " fails to vanish");
  SMat<K> idm = SMat<K>::identity(A.n, detail::spoly_const(one_z));
  if (!(acc.coeff[static_cast<size_t>(p)] == idm))
    throw std::runtime_error("p_curvature: top order is not the identity");
  return {acc.coeff[0], acc.coeff};
}

struct LogIdentityReport {
  bool ok = true;
  long order = -1;
  long row = -1, col = -1;
};

// (z d + s z A)^p - (z d + s z A) agrees with z^p (d + s A)^p order by order.
template <class K>
LogIdentityReport log_identity_check(const Mat<RatFun<K>>& A, long p) {
  RatFun<K> one_z = kone(A.sample());
  RatFun<K> zf = RatFun<K>::monomial(kone(A.sample().num.lead()), 1);
  SMat<K> szA = pencil_times_s(A);
  for (auto& e : szA.a) e = detail::spoly_const(zf) * e;
  DiffOp<K> nablaL = diffop_first_order(szA, zf);
  DiffOp<K> lhs = diffop_identity<K>(A.n, one_z);
  for (long i = 0; i < p; ++i) lhs = diffop_compose(nablaL, lhs);
  while (lhs.order() < 1) lhs.coeff.push_back(SMat<K>::zero(A.n, A.n, detail::spoly_const(one_z)));
  lhs.coeff[0] = lhs.coeff[0] - nablaL.coeff[0];
  lhs.coeff[1] = lhs.coeff[1] - nablaL.coeff[1];

  PCurvature<K> cp = p_curvature(A, p);
  RatFun<K> zp = RatFun<K>::monomial(kone(A.sample().num.lead()), p);
  std::vector<SMat<K>> rhs = cp.orders;
  for (auto& m : rhs)
    for (auto& e : m.a) e = detail::spoly_const(zp) * e;

  long top = std::max(lhs.order(), static_cast<long>(rhs.size()) - 1);
  for (long k = 0; k <= top; ++k) {
    SMat<K> l = k <= lhs.order() ? lhs.coeff[static_cast<size_t>(k)]
                                 : SMat<K>::zero(A.n, A.n, detail::spoly_const(one_z));
    SMat<K> r = k < static_cast<long>(rhs.size()) ? rhs[static_cast<size_t>(k)]
                                                  : SMat<K>::zero(A.n, A.n, detail::spoly_const(one_z));
    for (long i = 0; i < A.n; ++i)
      for (long j = 0; j < A.n; ++j)
        if (!kis_zero(l(i, j) - r(i, j))) return {false, k, i, j};
  }
  return {};
}

// d^p annihilates every rational function in characteristic p; checked as a
// property on monomials and on 1/z by the callers.
template <class K>
RatFun<K> rational_p_th_derivative(RatFun<K> f, long p) {
  for (long i = 0; i < p; ++i) f = f.derivative();
  return f;
}

// Row a_{n,1}..a_{n,n} of the coefficients in (z d)^n = sum a_{n,k} z^k d^k,
// via a_{n+1,k} = a_{n,k-1} + k a_{n,k}.
inline std::vector<Int> stirling_row(long n) {
  if (n < 1) throw std::invalid_argument("stirling_row: n must be >= 1");
  std::vector<Int> row{Int(1)};  // row[k-1] holds a_{m,k}
  for (long m = 1; m < n; ++m) {
    std::vector<Int> next(static_cast<size_t>(m) + 1, Int(0));
    for (long k = 1; k <= m + 1; ++k) {
      Int v(0);
      if (k >= 2) v += row[static_cast<size_t>(k - 2)];
      if (k <= m) v += Int(k) * row[static_cast<size_t>(k - 1)];
      next[static_cast<size_t>(k - 1)] = v;
    }
    row = std::move(next);
  }
  return row;
}

struct StirlingReport {
  bool ok = true;
  std::vector<Int> row;
};

// Row p reduces to (1, 0, ..., 0, 1) modulo a prime p.
inline StirlingReport stirling_row_check(long p) {
  StirlingReport rep;
  rep.row = stirling_row(p);
  if (rep.row.front() != 1 || rep.row.back() != 1) rep.ok = false;
  for (size_t k = 1; k + 1 < rep.row.size(); ++k)
    if (rep.row[k] % p != 0) rep.ok = false;
  return rep;
}

struct PiLemmaReport {
  bool ok = true;
  long valuation = kValuationInfinity;
  long required = 0;
};

// (1 + pi a + pi^2 b)^p - (1 + pi^p (a^p - a)) has pi-valuation >= p+1.
inline PiLemmaReport pi_lemma_check(long p, const Mat<Rat>& alpha, const Mat<Rat>& beta) {
  if (!is_prime(p) || p < 3) throw std::invalid_argument("pi_lemma_check: requires prime p >= 3");
  if (alpha.n != alpha.m || beta.n != beta.m || alpha.n != beta.n)
    throw std::invalid_argument("pi_lemma_check: square matrices of equal size required");
  long n = alpha.n;
  PiMat x(p, n);
  x.digit[0] = Mat<Rat>::identity(n, Rat(1));
  x.digit[1] = x.digit[1] + alpha;
  if (p == 3)
    x.digit[0] = x.digit[0] + Rat(-3) * beta;  // pi^2 = -3 when the basis stops at pi
  else
    x.digit[2] = x.digit[2] + beta;
  PiMat xp = pimat_pow(x, p);

  Mat<Rat> ap = Mat<Rat>::identity(n, Rat(1));
  for (long i = 0; i < p; ++i) ap = ap * alpha;
  Mat<Rat> frob = ap - alpha;
  PiMat target = PiMat::identity(p, n);
  target.digit[1] = Rat(-p) * frob;  // pi^p = -p * pi

  PiMat diff = xp - target;
  PiLemmaReport rep;
  rep.required = p + 1;
  rep.valuation = pimat_valuation(diff);
  rep.ok = rep.valuation >= rep.required;
  return rep;
}

// Connection matrix A(z) = C(z)/z for the two-dimensional model, entries over
// a prime field: C(z) = [[u1 - h z/(z-1), -h z/(z-1)], [-h/(z-1), u2 - h z/(z-1)]].
inline Mat<RatFun<Fp>> pencil_connection(long p, long u1, long u2, long h) {
  Fp one(1, p);
  Poly<Fp> z = Poly<Fp>::monomial(one, 1);
  Poly<Fp> zm1 = z - Poly<Fp>::constant(one);
  Poly<Fp> zzm1 = z * zm1;
  auto rf = [&](const Poly<Fp>& num, const Poly<Fp>& den) { return RatFun<Fp>(num, den); };
  Fp fu1(u1, p), fu2(u2, p), fh(h, p);
  Mat<RatFun<Fp>> A(2, 2, RatFun<Fp>::constant(Fp(0, p)));
  A(0, 0) = rf(fu1 * zm1 - fh * z, zzm1);
  A(0, 1) = rf(Poly<Fp>::constant(Fp(0, p)) - Poly<Fp>::constant(fh), zm1);
  A(1, 0) = rf(Poly<Fp>::constant(Fp(0, p)) - Poly<Fp>::constant(fh), zzm1);
  A(1, 1) = rf(fu2 * zm1 - fh * z, zzm1);
  return A;
}

namespace detail {

// Lift an s-polynomial with z-rational coefficients into a single rational
// function of z whose coefficient field is the rational functions of s.
inline RatFun<RatFun<Fp>> spoly_to_tower(const SPoly<Fp>& f, long p) {
  using KS = RatFun<Fp>;           // rational functions of s
  using KZ = RatFun<KS>;           // rational functions of z over them
  KZ acc = KZ::constant(KS::constant(Fp(0, p)));
  for (size_t k = 0; k < f.c.size(); ++k) {
    const RatFun<Fp>& c = f.c[k];  // rational in z over F_p
    Poly<KS> num, den;
    for (const auto& x : c.num.c) num.c.push_back(KS::constant(x));
    for (const auto& x : c.den.c) den.c.push_back(KS::constant(x));
    num.trim();
    den.trim();
    KS sk = KS::monomial(Fp(1, p), static_cast<long>(k));
    KZ term(num, den);
    acc = acc + KZ::constant(sk) * term;
  }
  return acc;
}

}  // namespace detail

struct PencilSpectrumReport {
  bool ok = true;
  bool trace_ok = true;
};

// Characteristic polynomial of z^p * (p-curvature of d + sA) equals that of
// (s^p - s) * z^p * A(z^p): both sides as 2x2 matrices of rational functions
// of z whose coefficients are rational functions of s over F_p.
inline PencilSpectrumReport pencil_spectrum_check(long p, long u1, long u2, long h) {
  using KS = RatFun<Fp>;
  using KZ = RatFun<KS>;
  Mat<RatFun<Fp>> A = pencil_connection(p, u1, u2, h);
  PCurvature<Fp> cp = p_curvature(A, p);

  KS s_one = KS::constant(Fp(1, p));
  KZ z_one = KZ::constant(s_one);
  Mat<KZ> lhs(2, 2, KZ::constant(KS::constant(Fp(0, p))));
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) lhs(i, j) = detail::spoly_to_tower(cp.m0(i, j), p);
  KZ zp = KZ::monomial(s_one, p);
  for (auto& e : lhs.a) e = zp * e;

  Mat<KZ> rhs(2, 2, KZ::constant(KS::constant(Fp(0, p))));
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) {
      SPoly<Fp> entry = SPoly<Fp>::constant(A(i, j));
      KZ t = detail::spoly_to_tower(entry, p);
      rhs(i, j) = t.substitute_power(p);
    }
  KS s_pow = KS::monomial(Fp(1, p), p) - KS::monomial(Fp(1, p), 1);
  KZ scale = zp * KZ::constant(s_pow);
  for (auto& e : rhs.a) e = scale * e;

  PencilSpectrumReport rep;
  rep.trace_ok = kis_zero(lhs.trace() - rhs.trace());
  if (!rep.trace_ok) {
    rep.ok = false;
    return rep;
  }
  rep.ok = mat_charpoly(lhs) == mat_charpoly(rhs);
  return rep;
}

struct RootReductionReport {
  bool ok = true;               // digit comparison agreed at every z-order
  bool extraction_ok = true;    // lambda-valuations admitted digit extraction
  bool powered_vanishing_ok = true;
  bool charpoly_fallback_ok = false;
  bool charpoly_fallback_ran = false;
  long first_mismatch_order = -1;
  std::string note;
};

// At q = zeta_p with a_i = 1 + u_i lambda, hbar = 1 + h lambda, the iterated
// product minus the identity, divided by lambda^p and reduced modulo lambda,
// matches z^p times the p-curvature of d + C(z)/z at s = 1 with the doubled
// h entries; the powered operator minus the identity vanishes past order p.
inline RootReductionReport root_reduction_check(long p, long u1, long u2, long h, long Dz) {
  RootReductionReport rep;
  CycloNum one(p, Rat(1));
  CycloNum lambda = CycloNum::zeta(p) - one;

  ModelImage<CycloNum> im;
  im.N = 2;
  im.compose_q = true;
  im.a1 = one + CycloNum(p, Rat(u1)) * lambda;
  im.a2 = one + CycloNum(p, Rat(u2)) * lambda;
  im.hb = one + CycloNum(p, Rat(h)) * lambda;

  MatSeries<CycloNum> prod = iterated_product_series(im, CycloNum::zeta(p), p, true, Dz);
  MatSeries<CycloNum> delta = prod;
  delta.c[0] = delta.c[0] - Mat<CycloNum>::identity(2, one);

  // Reference: z^p * p-curvature of the doubled-h connection at s = 1, as a
  // z-power series over F_p.
  long hh = (2 * h) % p;
  if (hh < 0) hh += p;
  Mat<RatFun<Fp>> A = pencil_connection(p, u1 % p, u2 % p, hh);
  PCurvature<Fp> cp = p_curvature(A, p);
  Fp fone(1, p);
  auto series_of = [&](const RatFun<Fp>& f, long order) {
    ScalarSeries<Fp> num(order, Fp(0, p)), den(order, Fp(0, p));
    for (long i = 0; i <= order; ++i) {
      num.c[static_cast<size_t>(i)] = i <= f.num.deg() ? f.num.coeff(i) : Fp(0, p);
      den.c[static_cast<size_t>(i)] = i <= f.den.deg() ? f.den.coeff(i) : Fp(0, p);
    }
    return num * series_inverse(den);
  };

  // z^p * M0 entry (i,j) at s=1 expanded in z; the z^p factor and the poles of
  // M0 at z=0 are combined first so the result is a genuine power series.
  Mat<RatFun<Fp>> m0s1(2, 2, RatFun<Fp>::constant(Fp(0, p)));
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) {
      RatFun<Fp> v = RatFun<Fp>::constant(Fp(0, p));
      for (size_t k = 0; k < cp.m0(i, j).c.size(); ++k) v = v + cp.m0(i, j).c[k];
      m0s1(i, j) = v;
    }
  RatFun<Fp> zpf = RatFun<Fp>::monomial(fone, p);
  for (auto& e : m0s1.a) e = zpf * e;
  Mat<ScalarSeries<Fp>> ref(2, 2, ScalarSeries<Fp>(Dz, Fp(0, p)));
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) ref(i, j) = series_of(m0s1(i, j), Dz);

  bool all_match = true;
  long mismatch_at = -1;
  for (long d = 0; d <= Dz && all_match; ++d) {
    for (long i = 0; i < 2 && all_match; ++i)
      for (long j = 0; j < 2 && all_match; ++j) {
        const CycloNum& entry = delta.c[static_cast<size_t>(d)](i, j);
        LambdaData ld = lambda_valuation_data(entry);
        if (ld.valuation < p) {
          rep.extraction_ok = false;
          rep.note = "lambda-valuation below p at z-order " + std::to_string(d);
          all_match = false;
          break;
        }
        long digit = ld.valuation > p ? 0 : ld.unit_digit;
        long want = ref(i, j).c[static_cast<size_t>(d)].v;
        if (digit != want) {
          all_match = false;
          mismatch_at = d;
        }
      }
  }
  rep.ok = all_match && rep.extraction_ok;
  rep.first_mismatch_order = mismatch_at;

  // Powered side: the same model with p-th powered parameters in z^p at q = 1
  // must sit within O(lambda^{p+1}).
  ModelImage<CycloNum> imp = model_image_power(im, p);
  MatSeries<CycloNum> mp = mcal_series(imp, one, Dz / p > 0 ? Dz / p : 1);
  for (long d = 0; d <= mp.D; ++d) {
    Mat<CycloNum> c = mp.c[static_cast<size_t>(d)];
    if (d == 0) c = c - Mat<CycloNum>::identity(2, one);
    for (const auto& e : c.a) {
      long val = lambda_valuation(e);
      if (val < p + 1) rep.powered_vanishing_ok = false;
    }
  }

  // Exploratory fallback: if raw digits disagree, compare characteristic
  // polynomials of the two digit matrices instead (lift-dependence).
  if (!rep.ok && rep.extraction_ok) {
    Mat<Fp> dig(2, 2, Fp(0, p)), refd(2, 2, Fp(0, p));
    bool built = true;
    long d = rep.first_mismatch_order >= 0 ? rep.first_mismatch_order : 0;
    for (long i = 0; i < 2 && built; ++i)
      for (long j = 0; j < 2 && built; ++j) {
        const CycloNum& entry = delta.c[static_cast<size_t>(d)](i, j);
        LambdaData ld = lambda_valuation_data(entry);
        if (ld.valuation < p) {
          built = false;
          break;
        }
        dig(i, j) = Fp(ld.valuation > p ? 0 : ld.unit_digit, p);
        refd(i, j) = ref(i, j).c[static_cast<size_t>(d)];
      }
    if (built) {
      rep.charpoly_fallback_ran = true;
      rep.charpoly_fallback_ok = mat_charpoly(dig) == mat_charpoly(refd);
    }
  }
  return rep;
}

}  // namespace qk

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qkroots/cyclo.hpp"
#include "qkroots/numeric.hpp"
#include "qkroots/qde.hpp"
#include "qkroots/series.hpp"

namespace qk {

// Substitution applied to the inner solution's q variable when assembling the
// intertwiner: the square regime raises q to p^2, the plain regime to p.
enum class FrobSubstitution { kPSquared, kP };

struct IntertwinerData {
  long p = 0;
  long D = 0;
  MatSeries<QFun> F;    // compensated intertwiner, z-series over Q(q)
  MatSeries<QFun> psi;  // fundamental solution of the base model
  Mat<QFun> W;          // constant alignment factor
};

// Constant alignment factor W = V(a, hb) V(a^p, hb^p)^{-1} built from the
// lower-triangular eigenvector normalization V = [[1, 0], [a1 d/(a2-a1), 1]].
inline Mat<QFun> intertwiner_alignment(const Model& m, long p) {
  QFun one = qfun_const(Rat(1));
  if (m.N == 1) return Mat<QFun>::identity(1, one);
  auto V = [&](const Rat& a1, const Rat& a2, const Rat& hb) {
    Mat<QFun> v = Mat<QFun>::identity(2, one);
    Rat d = 1 / hb - hb;
    v(1, 0) = qfun_const(a1 * d / (a2 - a1));
    return v;
  };
  Rat a1p = rat_pow(m.a1, p), a2p = rat_pow(m.a2, p), hbp = rat_pow(m.hb, p);
  return V(m.a1, m.a2, m.hb) * mat_inverse(V(a1p, a2p, hbp));
}

// F(z) = Psi(z) W Psi_pow(z^p)^{-1}, where Psi_pow is the fundamental solution
// of the parameter-powered model with q raised per the substitution mode.
inline IntertwinerData compute_intertwiner(const Model& m, long p, long D,
                                           FrobSubstitution sub = FrobSubstitution::kPSquared) {
  IntertwinerData out;
  out.p = p;
  out.D = D;
  out.psi = solve_fundamental(m, D);
  out.W = intertwiner_alignment(m, p);
  Model powered = m;
  powered.a1 = rat_pow(m.a1, p);
  powered.a2 = rat_pow(m.a2, p);
  powered.hb = rat_pow(m.hb, p);
  long inner = D / p;
  MatSeries<QFun> psi_pow = solve_fundamental(powered, inner);
  long qexp = (sub == FrobSubstitution::kPSquared) ? p * p : p;
  MatSeries<QFun> psi_pow_sub = map_mat_series(psi_pow, [&](const QFun& f) {
    return QFun(f.num.substitute_power(qexp), f.den.substitute_power(qexp));
  });
  MatSeries<QFun> psi_pow_z = mat_series_substitute_power(psi_pow_sub, p, D);
  MatSeries<QFun> w_series = MatSeries<QFun>::identity(D, m.N, qfun_const(Rat(1)));
  w_series.c[0] = out.W;
  out.F = out.psi * w_series * mat_series_inverse(psi_pow_z);
  return out;
}

struct PoleCertificate {
  bool pass = true;
  long first_bad_order = -1;
  long bad_row = -1, bad_col = -1;
  std::string bad_denominator;
};

// Certifies that no coefficient of the series has a denominator divisible by
// Phi_p, i.e. every coefficient is regular at q = zeta_p.
inline PoleCertificate pole_certificate(const MatSeries<QFun>& s, long p) {
  Poly<Rat> phi = cyclotomic_poly(p);
  PoleCertificate cert;
  for (long d = 0; d <= s.D; ++d)
    for (long i = 0; i < s.n; ++i)
      for (long j = 0; j < s.n; ++j) {
        const QFun& f = s.c[static_cast<size_t>(d)](i, j);
        if (poly_gcd(f.den, phi).deg() > 0) {
          cert.pass = false;
          cert.first_bad_order = d;
          cert.bad_row = i;
          cert.bad_col = j;
          std::string repr;
          for (long k = 0; k <= f.den.deg(); ++k) {
            repr += f.den.c[static_cast<size_t>(k)].get_str();
            if (k < f.den.deg()) repr += ",";
          }
          cert.bad_denominator = repr;
          return cert;
        }
      }
  return cert;
}

// Evaluate a z-series over Q(q) at q = zeta_p.
inline MatSeries<CycloNum> reduce_at_zeta(const MatSeries<QFun>& s, long p) {
  CycloNum zeta = CycloNum::zeta(p);
  return map_mat_series(s, [&](const QFun& f) { return ratfun_eval_embedded(f, zeta); });
}

// Largest distance between the exact reduction at zeta_p and a numeric
// evaluation at q = zeta_p (1 - delta), coefficient by coefficient.
inline double radial_agreement_distance(const MatSeries<QFun>& s, const MatSeries<CycloNum>& red, long p,
                                        double delta) {
  Cd qv = root_of_unity(p) * (1.0 - delta);
  double worst = 0.0;
  for (long d = 0; d <= s.D; ++d)
    for (long i = 0; i < s.n; ++i)
      for (long j = 0; j < s.n; ++j) {
        Cd approx = ratfun_eval_embedded(s.c[static_cast<size_t>(d)](i, j), qv);
        Cd exact = red.c[static_cast<size_t>(d)](i, j).to_complex();
        double scale = std::max(1.0, std::abs(exact));
        worst = std::max(worst, std::abs(approx - exact) / scale);
      }
  return worst;
}

struct ConjugationData {
  bool zero = false;
  long first_bad_order = -1;
  MatSeries<CycloNum> residual;
};

// Residual F(z) T(z^p) - P(z) F(z), with T the parameter-powered one-argument
// matrix at z^p and P the descending p-fold shift product at q = zeta_p.
inline ConjugationData conjugation_check(const Model& m, long p, long D,
                                         FrobSubstitution sub = FrobSubstitution::kPSquared) {
  IntertwinerData data = compute_intertwiner(m, p, D, sub);
  MatSeries<CycloNum> Fred = reduce_at_zeta(data.F, p);
  CycloNum one = CycloNum(p, Rat(1));
  ModelImage<CycloNum> P = model_image(m, one);
  ModelImage<CycloNum> Ppow = model_image_power(P, p);
  MatSeries<CycloNum> target_inner = mcal_series(Ppow, one, D / p);
  MatSeries<CycloNum> target = mat_series_substitute_power(target_inner, p, D);
  CycloNum zeta = CycloNum::zeta(p);
  MatSeries<CycloNum> prod = iterated_product_series(P, zeta, p, false, D);
  MatSeries<CycloNum> residual = Fred * target - prod * Fred;
  ConjugationData out;
  out.zero = residual.is_zero();
  out.residual = residual;
  if (!out.zero)
    for (long d = 0; d <= D; ++d)
      if (!residual.c[static_cast<size_t>(d)].is_zero()) {
        out.first_bad_order = d;
        break;
      }
  return out;
}

// Scalar-model closed forms at q = zeta_p, as z-series over Q(zeta_p).
struct ScalarClosedForms {
  ScalarSeries<CycloNum> plain;      // prod over p-coprime orders only
  ScalarSeries<CycloNum> adjusted;   // plain times binomial correction factor
};

inline ScalarClosedForms tpp0_closed_form(const Rat& hb, long p, long D) {
  CycloNum one(p, Rat(1));
  CycloNum zeta = CycloNum::zeta(p);
  ScalarSeries<CycloNum> lg(D, one);
  Rat hpow = 1;
  CycloNum zpow = one;
  for (long mm = 1; mm <= D; ++mm) {
    hpow *= hb;
    zpow = zpow * zeta;
    if (mm % p == 0) continue;
    CycloNum num = CycloNum(p, hpow - 1);
    CycloNum den = CycloNum(p, Rat(mm)) * (zpow - one);
    lg.c[static_cast<size_t>(mm)] = num / den;
  }
  ScalarClosedForms out{series_exp(lg), series_exp(lg)};
  // Correction exponent on p-divisible orders: (hb^{pm} - 1)(p-1) / (2 p m).
  ScalarSeries<CycloNum> corr(D, one);
  Rat hp = rat_pow(hb, p);
  Rat hppow = 1;
  for (long mm = 1; mm * p <= D; ++mm) {
    hppow *= hp;
    corr.c[static_cast<size_t>(mm * p)] = CycloNum(p, (hppow - 1) * Rat(p - 1) / Rat(2 * p * mm));
  }
  out.adjusted = series_exp(lg + corr);
  return out;
}

// Scalar intertwiner reduced at zeta_p, as a scalar series.
inline ScalarSeries<CycloNum> scalar_intertwiner_at_zeta(const Rat& hb, long p, long D,
                                                         FrobSubstitution sub = FrobSubstitution::kPSquared) {
  Model m = build_model("tpp0", Rat(0), Rat(0), hb);
  IntertwinerData data = compute_intertwiner(m, p, D, sub);
  MatSeries<CycloNum> red = reduce_at_zeta(data.F, p);
  ScalarSeries<CycloNum> s(D, CycloNum(p, Rat(1)));
  for (long d = 0; d <= D; ++d) s.c[static_cast<size_t>(d)] = red.c[static_cast<size_t>(d)](0, 0);
  return s;
}

}  // namespace qk

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkroots/bethe.hpp"
#include "qkroots/numeric.hpp"
#include "qkroots/rational.hpp"

namespace qk {

namespace detail {

// Bernoulli numbers B_0..B_max as doubles, generated once from the exact
// rational recurrence B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j.
inline const std::vector<double>& bernoulli_table() {
  static const std::vector<double> table = [] {
    const int max_n = 100;
    std::vector<Rat> b(static_cast<size_t>(max_n) + 1, Rat(0));
    b[0] = 1;
    for (int m = 1; m <= max_n; ++m) {
      Rat acc(0);
      Rat binom(1);  // C(m+1, j), starting at j = 0
      for (int j = 0; j < m; ++j) {
        acc += binom * b[static_cast<size_t>(j)];
        binom = binom * Rat(m + 1 - j) / Rat(j + 1);
      }
      b[static_cast<size_t>(m)] = -acc / Rat(m + 1);
    }
    std::vector<double> d(b.size());
    for (size_t i = 0; i < b.size(); ++i) d[i] = b[i].get_d();
    return d;
  }();
  return table;
}

inline Cd dilog_power_series(Cd w) {
  Cd sum(0, 0), term = w;
  for (int k = 1; k <= 120; ++k) {
    Cd add = term / Cd(static_cast<double>(k) * k, 0);
    sum += add;
    if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    term *= w;
  }
  return sum;
}

// Debye expansion Li2(w) = sum_k B_k u^{k+1} / (k+1)!, with u = -log(1 - w).
inline Cd dilog_log_series(Cd w) {
  const auto& B = bernoulli_table();
  Cd u = -std::log(Cd(1, 0) - w);
  Cd sum(0, 0);
  Cd upow = u;      // u^{k+1}
  double fact = 1;  // (k+1)!
  for (size_t k = 0; k < B.size(); ++k) {
    fact *= static_cast<double>(k + 1);
    if (B[k] != 0.0) {
      Cd add = B[k] * upow / fact;
      sum += add;
      if (k > 4 && std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    upow *= u;
  }
  return sum;
}

}  // namespace detail

// Dilogarithm on the principal branch, cut along [1, infinity).
inline Cd dilog(Cd w) {
  const double pi = 3.14159265358979323846;
  if (w.imag() == 0.0 && w.real() >= 1.0) {
    if (w.real() == 1.0) return Cd(pi * pi / 6.0, 0.0);
    throw std::domain_error("dilog evaluated on the branch cut [1, inf)");
  }
  double r = std::abs(w);
  if (r <= 0.5) return detail::dilog_power_series(w);
  if (std::abs(Cd(1, 0) - w) <= 0.5) {
    // Li2(w) + Li2(1-w) = pi^2/6 - log(w) log(1-w).
    Cd om = Cd(1, 0) - w;
    return Cd(pi * pi / 6.0, 0.0) - std::log(w) * std::log(om) - detail::dilog_power_series(om);
  }
  if (r >= 2.0) {
    // Li2(w) + Li2(1/w) = -pi^2/6 - log^2(-w)/2.
    Cd lg = std::log(-w);
    return -Cd(pi * pi / 6.0, 0.0) - 0.5 * lg * lg - dilog(Cd(1, 0) / w);
  }
  return detail::dilog_log_series(w);
}

// Yang-Yang potential for the Bethe system: dilogarithm pairs over x_i/a_j and
// x_i/x_j plus the logarithmic Kahler term log(z#) sum_i log x_i.
inline Cd yang_yang(const BetheParams& P, const std::vector<Cd>& x) {
  Cd Y(0, 0);
  for (long i = 0; i < P.k; ++i)
    for (long j = 0; j < P.n; ++j) {
      Cd w = x[static_cast<size_t>(i)] / P.a[static_cast<size_t>(j)];
      Y += dilog(w) - dilog(P.hb * w);
    }
  for (long i = 0; i < P.k; ++i)
    for (long j = 0; j < P.k; ++j) {
      Cd w = x[static_cast<size_t>(i)] / x[static_cast<size_t>(j)];
      Y -= dilog(w) - dilog(P.hb * w);
    }
  Cd logzs = std::log(bethe_zsharp(P));
  for (long i = 0; i < P.k; ++i) Y += logzs * std::log(x[static_cast<size_t>(i)]);
  return Y;
}

struct GradientCheck {
  bool ok = true;
  double max_deviation = 0;
  std::string error;
};

// Multiplicative central difference of the Yang-Yang potential at a candidate
// critical point: each logarithmic gradient must sit on the 2 pi i lattice.
inline GradientCheck yang_yang_gradient_check(const BetheParams& P, const std::vector<Cd>& x, double h = 1e-5,
                                              double tol = 1e-4) {
  const double tau = 6.283185307179586476925287;
  GradientCheck out;
  try {
    for (long i = 0; i < P.k; ++i) {
      std::vector<Cd> xp = x, xm = x;
      xp[static_cast<size_t>(i)] *= std::exp(Cd(h, 0));
      xm[static_cast<size_t>(i)] *= std::exp(Cd(-h, 0));
      Cd g = (yang_yang(P, xp) - yang_yang(P, xm)) / Cd(2 * h, 0);
      double lattice = std::round(g.imag() / tau);
      Cd dev = g - Cd(0, tau * lattice);
      out.max_deviation = std::max(out.max_deviation, std::abs(dev));
    }
  } catch (const std::domain_error& e) {
    out.ok = false;
    out.error = e.what();
    return out;
  }
  out.ok = out.max_deviation <= tol;
  return out;
}

struct AsymptoticsCase {
  std::string label;
  double eps = 0;
  Cd value;
  Cd target;
  double rel_err = 0;
};

struct AsymptoticsReport {
  std::vector<AsymptoticsCase> cases;
};

namespace detail {

// Partial sum of sum_m (hb^m - 1) z^m / (m (q^m - 1)).
inline Cd scalar_log_sum(Cd hb, Cd z, Cd q, long terms) {
  Cd sum(0, 0);
  Cd hp(1, 0), zp(1, 0), qp(1, 0);
  for (long mm = 1; mm <= terms; ++mm) {
    hp *= hb;
    zp *= z;
    qp *= q;
    sum += (hp - Cd(1, 0)) * zp / (static_cast<double>(mm) * (qp - Cd(1, 0)));
  }
  return sum;
}

}  // namespace detail

// Radial asymptotics of the scalar-model solution logarithm near roots of
// unity.  Three regimes are reported for each epsilon:
//  (i)   (1 - q)        L(q)          at q = 1 - eps        vs Li2(z) - Li2(hb z);
//  (ii)  (1 - q^p) p    L(q)          at q = zeta_p(1-eps)  vs Li2(z^p) - Li2(hb^p z^p);
//  (iii) (1 - q^p) p    L'(q)         at q = zeta_p(1-eps)  vs the same target,
// with L' the logarithm of the parameter-powered solution at z^p, q^{p^2}.
inline AsymptoticsReport scalar_vertex_asymptotics(double hb, double z, long p, const std::vector<double>& eps_list,
                                                   long terms = 200) {
  AsymptoticsReport rep;
  Cd hbc(hb, 0), zc(z, 0);
  for (double eps : eps_list) {
    {
      Cd q(1.0 - eps, 0.0);
      Cd val = (Cd(1, 0) - q) * detail::scalar_log_sum(hbc, zc, q, terms);
      Cd tgt = dilog(zc) - dilog(hbc * zc);
      rep.cases.push_back({"near_one", eps, val, tgt, std::abs(val - tgt) / std::max(1.0, std::abs(tgt))});
    }
    Cd zeta = root_of_unity(p);
    Cd q = zeta * (1.0 - eps);
    Cd qp = cd_pow(q, p);
    Cd tgt = dilog(cd_pow(zc, p)) - dilog(cd_pow(hbc, p) * cd_pow(zc, p));
    {
      Cd val = (Cd(1, 0) - qp) * Cd(static_cast<double>(p), 0) * detail::scalar_log_sum(hbc, zc, q, terms);
      rep.cases.push_back({"near_zeta", eps, val, tgt, std::abs(val - tgt) / std::max(1.0, std::abs(tgt))});
    }
    {
      Cd qsq = cd_pow(q, p * p);
      Cd val = (Cd(1, 0) - qp) * Cd(static_cast<double>(p), 0) *
               detail::scalar_log_sum(cd_pow(hbc, p), cd_pow(zc, p), qsq, terms);
      rep.cases.push_back({"near_zeta_powered", eps, val, tgt, std::abs(val - tgt) / std::max(1.0, std::abs(tgt))});
    }
  }
  return rep;
}

}  // namespace qk

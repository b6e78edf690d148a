#pragma once

#include <stdexcept>
#include <vector>

#include "qkroots/matrix.hpp"
#include "qkroots/poly.hpp"

namespace qk {

// Power series in z truncated at order D (inclusive): coefficients c[0..D].
template <class K>
struct ScalarSeries {
  long D = 0;
  std::vector<K> c;

  ScalarSeries() = default;
  ScalarSeries(long order, const K& sample) : D(order), c(static_cast<size_t>(order) + 1, kzero(sample)) {}
  static ScalarSeries one(long order, const K& sample) {
    ScalarSeries s(order, sample);
    s.c[0] = kone(sample);
    return s;
  }

  K sample() const {
    if (c.empty()) throw std::domain_error("empty series");
    return kone(c.front());
  }
  bool is_zero() const {
    for (const auto& x : c)
      if (!kis_zero(x)) return false;
    return true;
  }

  void check_same(const ScalarSeries& o) const {
    if (D != o.D) throw std::invalid_argument("series order mismatch");
  }

  friend ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b) {
    a.check_same(b);
    ScalarSeries r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
    return r;
  }
  friend ScalarSeries operator-(const ScalarSeries& a, const ScalarSeries& b) {
    a.check_same(b);
    ScalarSeries r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
    return r;
  }
  friend ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
    a.check_same(b);
    ScalarSeries r(a.D, a.sample());
    for (long i = 0; i <= a.D; ++i) {
      if (kis_zero(a.c[static_cast<size_t>(i)])) continue;
      for (long j = 0; i + j <= a.D; ++j)
        r.c[static_cast<size_t>(i + j)] =
            r.c[static_cast<size_t>(i + j)] + a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
    }
    return r;
  }
  friend bool operator==(const ScalarSeries& a, const ScalarSeries& b) {
    if (a.D != b.D) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
      if (!kis_zero(a.c[i] - b.c[i])) return false;
    return true;
  }
  friend bool operator!=(const ScalarSeries& a, const ScalarSeries& b) { return !(a == b); }
};

template <class K>
ScalarSeries<K> series_inverse(const ScalarSeries<K>& s) {
  if (kis_zero(s.c[0])) throw std::domain_error("series_inverse: constant term is zero");
  ScalarSeries<K> r(s.D, s.sample());
  K inv0 = kone(s.c[0]) / s.c[0];
  r.c[0] = inv0;
  for (long n = 1; n <= s.D; ++n) {
    K acc = kzero(inv0);
    for (long k = 1; k <= n; ++k) acc = acc + s.c[static_cast<size_t>(k)] * r.c[static_cast<size_t>(n - k)];
    r.c[static_cast<size_t>(n)] = kzero(inv0) - inv0 * acc;
  }
  return r;
}

// exp of a series with zero constant term.
template <class K>
ScalarSeries<K> series_exp(const ScalarSeries<K>& t) {
  if (!kis_zero(t.c[0])) throw std::domain_error("series_exp: constant term must vanish");
  ScalarSeries<K> r = ScalarSeries<K>::one(t.D, t.sample());
  ScalarSeries<K> pw = ScalarSeries<K>::one(t.D, t.sample());
  K fact = kone(t.sample());
  for (long m = 1; m <= t.D; ++m) {
    pw = pw * t;
    fact = fact * kfrom_int(fact, m);
    if (pw.is_zero()) break;
    K invf = kone(fact) / fact;
    for (long i = 0; i <= t.D; ++i)
      r.c[static_cast<size_t>(i)] = r.c[static_cast<size_t>(i)] + invf * pw.c[static_cast<size_t>(i)];
  }
  return r;
}

// log of a series with constant term 1.
template <class K>
ScalarSeries<K> series_log(const ScalarSeries<K>& s) {
  K one = kone(s.sample());
  if (!kis_zero(s.c[0] - one)) throw std::domain_error("series_log: constant term must be 1");
  ScalarSeries<K> t = s;
  t.c[0] = kzero(one);
  ScalarSeries<K> r(s.D, one);
  ScalarSeries<K> pw = ScalarSeries<K>::one(s.D, one);
  for (long m = 1; m <= s.D; ++m) {
    pw = pw * t;
    if (pw.is_zero()) break;
    K coef = kone(one) / kfrom_int(one, m);
    if (m % 2 == 0) coef = kzero(one) - coef;
    for (long i = 0; i <= s.D; ++i)
      r.c[static_cast<size_t>(i)] = r.c[static_cast<size_t>(i)] + coef * pw.c[static_cast<size_t>(i)];
  }
  return r;
}

// Substitute z -> z^p; the result keeps truncation order new_order, and input
// coefficients beyond new_order/p are discarded.
template <class K>
ScalarSeries<K> series_substitute_power(const ScalarSeries<K>& s, long p, long new_order) {
  ScalarSeries<K> r(new_order, s.sample());
  for (long k = 0; k <= s.D && k * p <= new_order; ++k) r.c[static_cast<size_t>(k * p)] = s.c[static_cast<size_t>(k)];
  return r;
}

// S^(a/b) for S with constant term 1, via exp((a/b) log S).
template <class K>
ScalarSeries<K> series_pow_rational(const ScalarSeries<K>& s, long a, long b) {
  K one = kone(s.sample());
  K e = kfrom_int(one, a) / kfrom_int(one, b);
  ScalarSeries<K> lg = series_log(s);
  for (auto& x : lg.c) x = e * x;
  return series_exp(lg);
}

// Matrix-valued truncated power series.
template <class K>
struct MatSeries {
  long D = 0;
  long n = 0;
  std::vector<Mat<K>> c;

  MatSeries() = default;
  MatSeries(long order, long dim, const K& sample)
      : D(order), n(dim), c(static_cast<size_t>(order) + 1, Mat<K>::zero(dim, dim, sample)) {}
  static MatSeries identity(long order, long dim, const K& sample) {
    MatSeries s(order, dim, sample);
    s.c[0] = Mat<K>::identity(dim, sample);
    return s;
  }

  K sample() const { return c.front().sample(); }
  bool is_zero() const {
    for (const auto& m : c)
      if (!m.is_zero()) return false;
    return true;
  }

  void check_same(const MatSeries& o) const {
    if (D != o.D || n != o.n) throw std::invalid_argument("matrix series mismatch");
  }

  friend MatSeries operator+(const MatSeries& a, const MatSeries& b) {
    a.check_same(b);
    MatSeries r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
    return r;
  }
  friend MatSeries operator-(const MatSeries& a, const MatSeries& b) {
    a.check_same(b);
    MatSeries r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
    return r;
  }
  friend MatSeries operator*(const MatSeries& a, const MatSeries& b) {
    a.check_same(b);
    MatSeries r(a.D, a.n, a.sample());
    for (long i = 0; i <= a.D; ++i) {
      if (a.c[static_cast<size_t>(i)].is_zero()) continue;
      for (long j = 0; i + j <= a.D; ++j)
        r.c[static_cast<size_t>(i + j)] =
            r.c[static_cast<size_t>(i + j)] + a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
    }
    return r;
  }
  friend bool operator==(const MatSeries& a, const MatSeries& b) {
    if (a.D != b.D || a.n != b.n) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
      if (!(a.c[i] == b.c[i])) return false;
    return true;
  }
  friend bool operator!=(const MatSeries& a, const MatSeries& b) { return !(a == b); }
};

template <class K>
MatSeries<K> mat_series_inverse(const MatSeries<K>& s) {
  Mat<K> inv0 = mat_inverse(s.c[0]);
  MatSeries<K> r(s.D, s.n, s.sample());
  r.c[0] = inv0;
  for (long m = 1; m <= s.D; ++m) {
    Mat<K> acc = Mat<K>::zero(s.n, s.n, s.sample());
    for (long k = 1; k <= m; ++k) acc = acc + s.c[static_cast<size_t>(k)] * r.c[static_cast<size_t>(m - k)];
    r.c[static_cast<size_t>(m)] = -(inv0 * acc);
  }
  return r;
}

template <class K>
MatSeries<K> mat_series_substitute_power(const MatSeries<K>& s, long p, long new_order) {
  MatSeries<K> r(new_order, s.n, s.sample());
  for (long k = 0; k <= s.D && k * p <= new_order; ++k) r.c[static_cast<size_t>(k * p)] = s.c[static_cast<size_t>(k)];
  return r;
}

// Map coefficients of a matrix series through an entry transformation.
template <class KA, class F>
auto map_mat_series(const MatSeries<KA>& s, F&& f) -> MatSeries<decltype(f(s.c[0](0, 0)))> {
  using KB = decltype(f(s.c[0](0, 0)));
  KB sample = kone(f(s.c[0](0, 0)));
  MatSeries<KB> r(s.D, s.n, sample);
  for (long d = 0; d <= s.D; ++d)
    for (long i = 0; i < s.n; ++i)
      for (long j = 0; j < s.n; ++j) r.c[static_cast<size_t>(d)](i, j) = f(s.c[static_cast<size_t>(d)](i, j));
  return r;
}

// phi(x*z; q) = prod_{i>=0} (1 - x z q^i) as a z-series via the functional
// equation phi(z) = (1 - z) phi(qz):  c_n (1 - q^n) = -x q^{n-1} c_{n-1}.
template <class K>
ScalarSeries<K> pochhammer_series(const K& x, const K& q, long D) {
  ScalarSeries<K> s = ScalarSeries<K>::one(D, kone(x));
  K qpow = kone(q);  // q^{n-1} entering the step n recursion
  for (long nn = 1; nn <= D; ++nn) {
    K qn = qpow * q;  // q^n
    K denom = kone(q) - qn;
    if (kis_zero(denom)) throw std::domain_error("pochhammer_series: q^n = 1 within truncation order");
    s.c[static_cast<size_t>(nn)] = (kzero(x) - x) * qpow * s.c[static_cast<size_t>(nn - 1)] / denom;
    qpow = qn;
  }
  return s;
}

}  // namespace qk

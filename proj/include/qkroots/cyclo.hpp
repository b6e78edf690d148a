#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qkroots/poly.hpp"
#include "qkroots/rational.hpp"

namespace qk {

// Phi_p(q) = 1 + q + ... + q^{p-1} for prime p.
inline Poly<Rat> cyclotomic_poly(long p) {
  if (!is_prime(p)) throw std::invalid_argument("cyclotomic_poly: index must be prime");
  Poly<Rat> f;
  f.c.assign(static_cast<size_t>(p), Rat(1));
  return f;
}

// Element of Q(zeta_p), p prime, stored on the power basis 1, zeta, ...,
// zeta^{p-2} with rational coordinates.
struct CycloNum {
  long p = 0;
  std::vector<Rat> c;  // size p-1

  CycloNum() = default;
  CycloNum(long prime, const Rat& rational_part) : p(prime), c(static_cast<size_t>(prime - 1), Rat(0)) {
    if (!is_prime(prime)) throw std::invalid_argument("CycloNum: conductor must be prime");
    c[0] = rational_part;
  }
  static CycloNum zeta(long prime, long k = 1) {
    CycloNum z(prime, Rat(0));
    z.add_power(((k % prime) + prime) % prime, Rat(1));
    return z;
  }

  // Adds coeff * zeta^k (0 <= k < p), folding zeta^{p-1} into the basis.
  void add_power(long k, const Rat& coeff) {
    if (k < static_cast<long>(c.size())) {
      c[static_cast<size_t>(k)] += coeff;
    } else {  // k == p-1: zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
      for (auto& x : c) x -= coeff;
    }
  }

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) return false;
    return true;
  }
  Rat rational_value() const {
    if (!is_rational()) throw std::domain_error("CycloNum is not rational");
    return c[0];
  }

  void check_same(const CycloNum& o) const {
    if (p != o.p) throw std::invalid_argument("CycloNum conductor mismatch");
  }

  friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
    a.check_same(b);
    CycloNum r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend CycloNum operator-(const CycloNum& a, const CycloNum& b) {
    a.check_same(b);
    CycloNum r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
  }
  CycloNum operator-() const {
    CycloNum r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    a.check_same(b);
    long p = a.p;
    std::vector<Rat> conv(static_cast<size_t>(2 * p - 3), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == 0) continue;
      for (size_t j = 0; j < b.c.size(); ++j) conv[i + j] += a.c[i] * b.c[j];
    }
    CycloNum r(p, Rat(0));
    for (long k = static_cast<long>(conv.size()) - 1; k >= 0; --k) {
      if (conv[static_cast<size_t>(k)] == 0) continue;
      r.add_power(k % p, conv[static_cast<size_t>(k)]);
    }
    return r;
  }
  friend bool operator==(const CycloNum& a, const CycloNum& b) { return (a - b).is_zero(); }
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  Poly<Rat> to_poly() const {
    Poly<Rat> f;
    f.c = c;
    f.trim();
    return f;
  }
  static CycloNum from_poly(long p, const Poly<Rat>& f) {
    CycloNum r(p, Rat(0));
    for (long k = f.deg(); k >= 0; --k) {
      const Rat& v = f.c[static_cast<size_t>(k)];
      if (v != 0) r.add_power(k % p, v);
    }
    return r;
  }

  std::complex<double> to_complex() const;
};

// Inverse in Q(zeta_p) via the extended Euclidean algorithm against Phi_p.
inline CycloNum cyclo_invert(const CycloNum& x) {
  if (x.is_zero()) throw std::domain_error("cyclo_invert of zero");
  if (x.is_rational()) return CycloNum(x.p, 1 / x.c[0]);
  Poly<Rat> f = x.to_poly();
  Poly<Rat> phi = cyclotomic_poly(x.p);
  auto eg = poly_ext_gcd(f, phi);
  if (eg.g.deg() != 0) throw std::domain_error("cyclo_invert: element not invertible");
  Rat scale = 1 / eg.g.c[0];
  Poly<Rat> u = Poly<Rat>::constant(scale) * eg.u;
  return CycloNum::from_poly(x.p, poly_divrem(u, phi).second);
}

inline CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * cyclo_invert(b); }

inline CycloNum kzero(const CycloNum& x) { return CycloNum(x.p, Rat(0)); }
inline CycloNum kone(const CycloNum& x) { return CycloNum(x.p, Rat(1)); }
inline bool kis_zero(const CycloNum& x) { return x.is_zero(); }
inline CycloNum kfrom_int(const CycloNum& x, long n) { return CycloNum(x.p, Rat(n)); }
inline CycloNum krat_embed(const CycloNum& x, const Rat& r) { return CycloNum(x.p, r); }

inline CycloNum cyclo_pow(const CycloNum& x, long e) {
  if (e < 0) return cyclo_invert(cyclo_pow(x, -e));
  CycloNum r = kone(x), b = x;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

inline std::complex<double> CycloNum::to_complex() const {
  std::complex<double> s(0.0, 0.0);
  const double tau = 6.283185307179586476925287;
  for (size_t j = 0; j < c.size(); ++j) {
    double arg = tau * static_cast<double>(j) / static_cast<double>(p);
    s += c[j].get_d() * std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return s;
}

namespace detail {

// Content = positive rational g with x = g * (primitive integer element).
inline Rat cyclo_content(const CycloNum& x) {
  Int den_lcm(1), num_gcd(0);
  for (const auto& v : x.c) {
    Int d = v.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  for (const auto& v : x.c) {
    Rat scaled = v * Rat(den_lcm);
    Int n = scaled.get_num();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  return Rat(num_gcd) / Rat(den_lcm);
}

// Image of an integral element under zeta -> 1 followed by reduction mod p.
inline long integral_digit_mod_p(const CycloNum& y) {
  Rat s(0);
  for (const auto& v : y.c) s += v;
  if (s.get_den() != 1) throw std::domain_error("digit of non-integral element");
  Int r = s.get_num() % Int(y.p);
  long d = static_cast<long>(r.get_si());
  return ((d % y.p) + y.p) % y.p;
}

}  // namespace detail

// Exact division by lambda = zeta - 1: multiply by the cofactor
// prod_{j=2}^{p-1} (zeta^j - 1) and divide by the full product
// prod_{j=1}^{p-1} (zeta^j - 1) = (-1)^{p-1} p.
inline CycloNum cyclo_div_lambda(const CycloNum& x) {
  long p = x.p;
  CycloNum cof = kone(x);
  for (long j = 2; j <= p - 1; ++j) cof = cof * (CycloNum::zeta(p, j) - kone(x));
  Rat full = (p % 2 == 0) ? Rat(-p) : Rat(p);
  CycloNum r = x * cof;
  for (auto& v : r.c) v /= full;
  return r;
}

struct LambdaData {
  long valuation;  // kValuationInfinity for zero
  long unit_digit; // digit in F_p of x / lambda^valuation (0 iff x == 0)
};

// Lambda-adic valuation and leading digit for any element of Q(zeta_p).
inline LambdaData lambda_valuation_data(const CycloNum& x) {
  if (x.is_zero()) return {kValuationInfinity, 0};
  long p = x.p;
  Rat content = detail::cyclo_content(x);
  CycloNum y = x;
  for (auto& v : y.c) v /= content;
  long vp = padic_valuation(content, p);
  long val = (p - 1) * vp;
  // p = lambda^(p-1) * u with u = -1 mod lambda, so each power of p
  // swapped for lambda^(p-1) contributes a sign to the digit.
  Rat unit_rat = content / rat_pow(Rat(p), vp);
  if (vp % 2 != 0) unit_rat = -unit_rat;
  while (true) {
    long d = detail::integral_digit_mod_p(y);
    if (d != 0) {
      // Fold the p-free rational unit into the digit.
      Int num = unit_rat.get_num() % Int(p), den = unit_rat.get_den() % Int(p);
      long ln = static_cast<long>(num.get_si()), ld = static_cast<long>(den.get_si());
      ln = ((ln % p) + p) % p;
      ld = ((ld % p) + p) % p;
      long dinv = 1;
      for (long t = 1; t < p; ++t)
        if ((ld * t) % p == 1) {
          dinv = t;
          break;
        }
      return {val, (((d * ln) % p) * dinv) % p};
    }
    y = cyclo_div_lambda(y);
    ++val;
  }
}

inline long lambda_valuation(const CycloNum& x) { return lambda_valuation_data(x).valuation; }

// Digit of x / lambda^k in F_p; requires v_lambda(x) >= k.
inline long lambda_digit_at(const CycloNum& x, long k) {
  LambdaData d = lambda_valuation_data(x);
  if (d.valuation > k) return 0;
  if (d.valuation == k) return d.unit_digit;
  throw std::domain_error("lambda_digit_at: valuation below requested level");
}

}  // namespace qk

#pragma once

#include <algorithm>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "qkroots/rational.hpp"

namespace qk {

// Dense univariate polynomial over a field K. Invariant: coefficient vector is
// empty (the zero polynomial) or its last entry is nonzero.
template <class K>
struct Poly {
  std::vector<K> c;  // c[i] multiplies x^i

  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly constant(const K& v) {
    Poly p;
    if (!kis_zero(v)) p.c.push_back(v);
    return p;
  }
  // Monomial v * x^k.
  static Poly monomial(const K& v, long k) {
    Poly p;
    if (kis_zero(v)) return p;
    p.c.assign(static_cast<size_t>(k), kzero(v));
    p.c.push_back(v);
    return p;
  }

  void trim() {
    while (!c.empty() && kis_zero(c.back())) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long deg() const { return static_cast<long>(c.size()) - 1; }
  const K& lead() const {
    if (c.empty()) throw std::domain_error("lead of zero polynomial");
    return c.back();
  }
  K coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c.size())) {
      if (c.empty()) throw std::domain_error("coeff of zero polynomial needs a sample");
      return kzero(c.front());
    }
    return c[static_cast<size_t>(i)];
  }

  K eval(const K& x) const {
    if (c.empty()) return kzero(x);
    K r = c.back();
    for (long i = deg() - 1; i >= 0; --i) r = r * x + c[static_cast<size_t>(i)];
    return r;
  }

  Poly derivative() const {
    Poly d;
    for (size_t i = 1; i < c.size(); ++i)
      d.c.push_back(c[i] * kfrom_int(c[i], static_cast<long>(i)));
    d.trim();
    return d;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    size_t n = std::max(a.c.size(), b.c.size());
    r.c.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      if (i < a.c.size() && i < b.c.size())
        r.c.push_back(a.c[i] + b.c[i]);
      else if (i < a.c.size())
        r.c.push_back(a.c[i]);
      else
        r.c.push_back(b.c[i]);
    }
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    size_t n = std::max(a.c.size(), b.c.size());
    r.c.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      if (i < a.c.size() && i < b.c.size())
        r.c.push_back(a.c[i] - b.c[i]);
      else if (i < a.c.size())
        r.c.push_back(a.c[i]);
      else
        r.c.push_back(kzero(b.c[i]) - b.c[i]);
    }
    r.trim();
    return r;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c) x = kzero(x) - x;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, kzero(a.c.front()));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend Poly operator*(const K& s, const Poly& a) {
    Poly r = a;
    for (auto& x : r.c) x = s * x;
    r.trim();
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
      if (!kis_zero(a.c[i] - b.c[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Substitute x -> x^p.
  Poly substitute_power(long p) const {
    if (p < 1) throw std::invalid_argument("substitute_power: p must be >= 1");
    Poly r;
    if (c.empty()) return r;
    r.c.assign(static_cast<size_t>(deg()) * p + 1, kzero(c.front()));
    for (size_t i = 0; i < c.size(); ++i) r.c[i * p] = c[i];
    r.trim();
    return r;
  }
};

// Ring traits so Poly<K> can itself serve as a matrix entry type.
template <class K>
Poly<K> kzero(const Poly<K>&) {
  return Poly<K>();
}
template <class K>
Poly<K> kone(const Poly<K>& s) {
  if (s.is_zero()) throw std::domain_error("kone of zero polynomial needs a coefficient sample");
  return Poly<K>::constant(kone(s.c.front()));
}
template <class K>
bool kis_zero(const Poly<K>& a) {
  return a.is_zero();
}
template <class K>
Poly<K> kfrom_int(const Poly<K>& s, long n) {
  if (s.is_zero()) throw std::domain_error("kfrom_int of zero polynomial needs a coefficient sample");
  return Poly<K>::constant(kfrom_int(s.c.front(), n));
}

template <class K>
std::pair<Poly<K>, Poly<K>> poly_divrem(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly<K> q, r = a;
  if (r.deg() < b.deg()) return {q, r};
  q.c.assign(static_cast<size_t>(r.deg() - b.deg()) + 1, kzero(b.lead()));
  while (!r.is_zero() && r.deg() >= b.deg()) {
    K f = r.lead() / b.lead();
    long k = r.deg() - b.deg();
    q.c[static_cast<size_t>(k)] = q.c[static_cast<size_t>(k)] + f;
    for (long i = 0; i <= b.deg(); ++i) {
      size_t idx = static_cast<size_t>(i + k);
      r.c[idx] = r.c[idx] - f * b.c[static_cast<size_t>(i)];
    }
    r.trim();
  }
  q.trim();
  return {q, r};
}

// Rescale a rational polynomial to integer coefficients with content 1 and a
// positive leading coefficient; keeps Euclidean remainders from blowing up.
inline void poly_make_primitive(Poly<Rat>& a) {
  if (a.is_zero()) return;
  Int den_lcm(1), num_gcd(0);
  for (auto& x : a.c) {
    Int d = x.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  for (auto& x : a.c) x *= Rat(den_lcm);
  for (auto& x : a.c) {
    Int n = x.get_num();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  if (num_gcd != 0)
    for (auto& x : a.c) x /= Rat(num_gcd);
  if (a.lead() < 0)
    for (auto& x : a.c) x = -x;
}

template <class K>
void poly_reduce_scale(Poly<K>& a) {
  if constexpr (std::is_same_v<K, Rat>) {
    poly_make_primitive(a);
  } else {
    if (a.is_zero()) return;
    K inv = kone(a.lead()) / a.lead();
    for (auto& x : a.c) x = inv * x;
  }
}

// Monic gcd (rational polynomials travel through a primitive remainder
// sequence to keep coefficients small).
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  poly_reduce_scale(a);
  poly_reduce_scale(b);
  while (!b.is_zero()) {
    Poly<K> r = poly_divrem(a, b).second;
    poly_reduce_scale(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {
    K inv = kone(a.lead()) / a.lead();
    for (auto& x : a.c) x = inv * x;
  }
  return a;
}

// Returns (g, u, v) with u*a + v*b = g, g monic (or zero).
template <class K>
struct ExtGcd {
  Poly<K> g, u, v;
};

template <class K>
ExtGcd<K> poly_ext_gcd(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r0 = a, r1 = b;
  K one_s = kone(a.is_zero() ? b.lead() : a.lead());
  Poly<K> s0 = Poly<K>::constant(one_s), s1;
  Poly<K> t0, t1 = Poly<K>::constant(one_s);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divrem(r0, r1);
    Poly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.is_zero()) {
    K inv = one_s / r0.lead();
    for (auto& x : r0.c) x = inv * x;
    for (auto& x : s0.c) x = inv * x;
    for (auto& x : t0.c) x = inv * x;
  }
  return {r0, s0, t0};
}

template <class K>
Poly<K> poly_pow(const Poly<K>& a, long e) {
  if (e < 0) throw std::invalid_argument("poly_pow: negative exponent");
  if (a.is_zero()) {
    if (e == 0) throw std::domain_error("poly_pow: 0^0 needs a coefficient sample");
    return Poly<K>();
  }
  Poly<K> r = Poly<K>::constant(kone(a.lead()));
  Poly<K> b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// Composition a(b(x)).
template <class K>
Poly<K> poly_compose(const Poly<K>& a, const Poly<K>& b) {
  Poly<K> r;
  for (long i = a.deg(); i >= 0; --i) {
    r = r * b + Poly<K>::constant(a.c[static_cast<size_t>(i)]);
  }
  return r;
}

}  // namespace qk

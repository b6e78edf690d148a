#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "qkroots/poly.hpp"

namespace qk {

// Rational function num/den over a field K, kept in lowest terms with a monic
// denominator after every operation.
template <class K>
struct RatFun {
  Poly<K> num, den;

  RatFun() = default;
  RatFun(Poly<K> n, Poly<K> d) : num(std::move(n)), den(std::move(d)) { normalize(); }
  static RatFun from_poly(Poly<K> p) {
    RatFun r;
    if (p.is_zero()) throw std::domain_error("RatFun::from_poly(0) needs a sample; use zero_like");
    r.den = Poly<K>::constant(kone(p.lead()));
    r.num = std::move(p);
    r.normalize();
    return r;
  }
  static RatFun constant(const K& v) {
    RatFun r;
    r.num = Poly<K>::constant(v);
    r.den = Poly<K>::constant(kone(v));
    return r;
  }
  // The variable itself, scaled: s * x^k.
  static RatFun monomial(const K& s, long k) {
    RatFun r;
    r.num = Poly<K>::monomial(s, k);
    r.den = Poly<K>::constant(kone(s));
    return r;
  }

  bool valid() const { return !den.is_zero(); }
  bool is_zero() const { return num.is_zero(); }
  K sample() const { return den.lead(); }

  void normalize() {
    if (den.is_zero()) throw std::domain_error("RatFun with zero denominator");
    if (num.is_zero()) {
      den = Poly<K>::constant(kone(den.lead()));
      return;
    }
    Poly<K> g = poly_gcd(num, den);
    if (g.deg() > 0) {
      num = poly_divrem(num, g).first;
      den = poly_divrem(den, g).first;
    }
    K inv = kone(den.lead()) / den.lead();
    for (auto& x : num.c) x = inv * x;
    for (auto& x : den.c) x = inv * x;
  }

  RatFun zero_like() const { return constant(kzero(sample())); }
  RatFun one_like() const { return constant(kone(sample())); }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  RatFun operator-() const {
    RatFun r = *this;
    for (auto& x : r.num.c) x = kzero(x) - x;
    return r;
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num * b.num, a.den * b.den);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("RatFun division by zero");
    return RatFun(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const RatFun& a, const RatFun& b) {
    return (a.num * b.den - b.num * a.den).is_zero();
  }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  RatFun derivative() const {
    return RatFun(num.derivative() * den - num * den.derivative(), den * den);
  }

  // Evaluate at a point of K; throws if the denominator vanishes there.
  K eval(const K& x) const {
    K d = den.eval(x);
    if (kis_zero(d)) throw std::domain_error("RatFun evaluation at a pole");
    return num.eval(x) / d;
  }

  RatFun substitute_power(long p) const {
    return RatFun(num.substitute_power(p), den.substitute_power(p));
  }
};

template <class K>
RatFun<K> kzero(const RatFun<K>& x) {
  return x.zero_like();
}
template <class K>
RatFun<K> kone(const RatFun<K>& x) {
  return x.one_like();
}
template <class K>
bool kis_zero(const RatFun<K>& x) {
  return x.is_zero();
}
template <class K>
RatFun<K> kfrom_int(const RatFun<K>& x, long n) {
  return RatFun<K>::constant(kfrom_int(x.sample(), n));
}
template <class K>
RatFun<K> krat_embed(const RatFun<K>& x, const Rat& r) {
  return RatFun<K>::constant(krat_embed(x.sample(), r));
}

// Evaluate a polynomial / rational function with rational coefficients at a
// point of another field containing Q.
template <class K>
K poly_eval_embedded(const Poly<Rat>& f, const K& x) {
  K r = kzero(x);
  for (long i = f.deg(); i >= 0; --i) r = r * x + krat_embed(x, f.c[static_cast<size_t>(i)]);
  return r;
}
template <class K>
K ratfun_eval_embedded(const RatFun<Rat>& f, const K& x) {
  K d = poly_eval_embedded(f.den, x);
  if (kis_zero(d)) throw std::domain_error("rational function evaluated at a pole");
  return poly_eval_embedded(f.num, x) / d;
}

}  // namespace qk

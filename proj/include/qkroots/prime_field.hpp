#pragma once

#include <stdexcept>

#include "qkroots/rational.hpp"

namespace qk {

// Element of F_p with the (prime) modulus carried at runtime.
struct Fp {
  long v = 0;
  long p = 0;

  Fp() = default;
  Fp(long value, long prime) : p(prime) {
    if (prime < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
    v = ((value % prime) + prime) % prime;
  }
  static Fp from_rat(const Rat& r, long prime) {
    Int num = r.get_num() % Int(prime), den = r.get_den() % Int(prime);
    long n = static_cast<long>(num.get_si()), d = static_cast<long>(den.get_si());
    Fp fn(n, prime), fd(d, prime);
    return fn / fd;
  }

  void check_same(const Fp& o) const {
    if (p != o.p) throw std::invalid_argument("Fp modulus mismatch");
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    a.check_same(b);
    return Fp(a.v + b.v, a.p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    a.check_same(b);
    return Fp(a.v - b.v, a.p);
  }
  Fp operator-() const { return Fp(-v, p); }
  friend Fp operator*(const Fp& a, const Fp& b) {
    a.check_same(b);
    return Fp(a.v * b.v, a.p);
  }
  Fp inverse() const {
    if (v == 0) throw std::domain_error("Fp inverse of zero");
    long t = 0, newt = 1, r = p, newr = v;
    while (newr != 0) {
      long q = r / newr;
      long tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    return Fp(t, p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  friend bool operator==(const Fp& a, const Fp& b) { return a.p == b.p && a.v == b.v; }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline Fp kzero(const Fp& x) { return Fp(0, x.p); }
inline Fp kone(const Fp& x) { return Fp(1, x.p); }
inline bool kis_zero(const Fp& x) { return x.v == 0; }
inline Fp kfrom_int(const Fp& x, long n) { return Fp(n % x.p, x.p); }
inline Fp krat_embed(const Fp& x, const Rat& r) { return Fp::from_rat(r, x.p); }

inline Fp fp_pow(const Fp& x, long e) {
  if (e < 0) return fp_pow(x, -e).inverse();
  Fp r = kone(x), b = x;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

}  // namespace qk

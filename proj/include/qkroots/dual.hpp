#pragma once

#include <stdexcept>
#include <utility>

namespace qk {

// First-order jet a + eps*b with eps^2 = 0, over a field K.
template <class K>
struct Dual {
  K a, b;

  Dual(K value, K deriv) : a(std::move(value)), b(std::move(deriv)) {}
  static Dual constant(const K& v) { return Dual(v, kzero(v)); }

  friend Dual operator+(const Dual& x, const Dual& y) { return Dual(x.a + y.a, x.b + y.b); }
  friend Dual operator-(const Dual& x, const Dual& y) { return Dual(x.a - y.a, x.b - y.b); }
  Dual operator-() const { return Dual(kzero(a) - a, kzero(b) - b); }
  friend Dual operator*(const Dual& x, const Dual& y) { return Dual(x.a * y.a, x.a * y.b + x.b * y.a); }
  friend Dual operator/(const Dual& x, const Dual& y) {
    if (kis_zero(y.a)) throw std::domain_error("Dual division by pure-eps element");
    K inv = kone(y.a) / y.a;
    return Dual(x.a * inv, (x.b * y.a - x.a * y.b) * inv * inv);
  }
  friend bool operator==(const Dual& x, const Dual& y) {
    return kis_zero(x.a - y.a) && kis_zero(x.b - y.b);
  }
  friend bool operator!=(const Dual& x, const Dual& y) { return !(x == y); }
};

template <class K>
Dual<K> kzero(const Dual<K>& x) {
  return Dual<K>(kzero(x.a), kzero(x.a));
}
template <class K>
Dual<K> kone(const Dual<K>& x) {
  return Dual<K>(kone(x.a), kzero(x.a));
}
template <class K>
bool kis_zero(const Dual<K>& x) {
  return kis_zero(x.a) && kis_zero(x.b);
}
template <class K>
Dual<K> kfrom_int(const Dual<K>& x, long n) {
  return Dual<K>(kfrom_int(x.a, n), kzero(x.a));
}

}  // namespace qk

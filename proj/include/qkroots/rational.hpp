#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qk {

using Rat = mpq_class;
using Int = mpz_class;
using Cd = std::complex<double>;

inline constexpr long kValuationInfinity = std::numeric_limits<long>::max() / 2;

inline Rat kzero(const Rat&) { return Rat(0); }
inline Rat kone(const Rat&) { return Rat(1); }
inline bool kis_zero(const Rat& x) { return x == 0; }
inline Rat kfrom_int(const Rat&, long n) { return Rat(n); }
inline Rat krat_embed(const Rat&, const Rat& r) { return r; }

inline Cd kzero(const Cd&) { return Cd(0.0, 0.0); }
inline Cd kone(const Cd&) { return Cd(1.0, 0.0); }
inline bool kis_zero(const Cd& x) { return x == Cd(0.0, 0.0); }
inline Cd kfrom_int(const Cd&, long n) { return Cd(static_cast<double>(n), 0.0); }
inline Cd krat_embed(const Cd&, const Rat& r) { return Cd(r.get_d(), 0.0); }

inline Rat rat_pow(const Rat& x, long e) {
  if (e < 0) {
    if (x == 0) throw std::domain_error("rat_pow: zero to negative power");
    return 1 / rat_pow(x, -e);
  }
  Rat r(1), b(x);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Exponent of the prime p in r; r must be nonzero.
inline long padic_valuation(const Rat& r, long p) {
  if (r == 0) throw std::domain_error("padic_valuation of zero");
  long v = 0;
  Int n = r.get_num(), d = r.get_den();
  Int pp(p);
  while (n % pp == 0) {
    n /= pp;
    ++v;
  }
  while (d % pp == 0) {
    d /= pp;
    --v;
  }
  return v;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

inline Rat rat_from_string(const std::string& s) {
  Rat x;
  if (x.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  x.canonicalize();
  return x;
}

}  // namespace qk

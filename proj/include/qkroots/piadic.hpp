#pragma once

#include <stdexcept>
#include <vector>

#include "qkroots/matrix.hpp"
#include "qkroots/rational.hpp"

namespace qk {

// Matrix over Q[pi]/(pi^{p-1} + p): digits are rational matrices multiplying
// pi^0 .. pi^{p-2}, and pi^{p-1} folds to -p.  The valuation is pi-adic with
// v(pi) = 1 and v(p) = p - 1.
struct PiMat {
  long p = 0;
  long n = 0;
  std::vector<Mat<Rat>> digit;  // size p-1

  PiMat() = default;
  PiMat(long prime, long dim) : p(prime), n(dim) {
    digit.assign(static_cast<size_t>(prime - 1), Mat<Rat>::zero(dim, dim, Rat(1)));
  }
  static PiMat identity(long prime, long dim) {
    PiMat r(prime, dim);
    r.digit[0] = Mat<Rat>::identity(dim, Rat(1));
    return r;
  }

  void check_same(const PiMat& o) const {
    if (p != o.p || n != o.n) throw std::invalid_argument("PiMat shape mismatch");
  }

  friend PiMat operator+(const PiMat& a, const PiMat& b) {
    a.check_same(b);
    PiMat r = a;
    for (size_t k = 0; k < r.digit.size(); ++k) r.digit[k] = r.digit[k] + b.digit[k];
    return r;
  }
  friend PiMat operator-(const PiMat& a, const PiMat& b) {
    a.check_same(b);
    PiMat r = a;
    for (size_t k = 0; k < r.digit.size(); ++k) r.digit[k] = r.digit[k] - b.digit[k];
    return r;
  }
  friend PiMat operator*(const PiMat& a, const PiMat& b) {
    a.check_same(b);
    long e = a.p - 1;
    std::vector<Mat<Rat>> conv(static_cast<size_t>(2 * e - 1), Mat<Rat>::zero(a.n, a.n, Rat(1)));
    for (long i = 0; i < e; ++i) {
      if (a.digit[static_cast<size_t>(i)].is_zero()) continue;
      for (long j = 0; j < e; ++j)
        conv[static_cast<size_t>(i + j)] =
            conv[static_cast<size_t>(i + j)] + a.digit[static_cast<size_t>(i)] * b.digit[static_cast<size_t>(j)];
    }
    PiMat r(a.p, a.n);
    for (long k = static_cast<long>(conv.size()) - 1; k >= 0; --k) {
      if (k >= e)
        conv[static_cast<size_t>(k - e)] = conv[static_cast<size_t>(k - e)] + Rat(-a.p) * conv[static_cast<size_t>(k)];
      else
        r.digit[static_cast<size_t>(k)] = conv[static_cast<size_t>(k)];
    }
    return r;
  }
};

inline PiMat pimat_pow(const PiMat& x, long e) {
  PiMat r = PiMat::identity(x.p, x.n), b = x;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

inline long pimat_valuation(const PiMat& x) {
  long best = kValuationInfinity;
  for (size_t k = 0; k < x.digit.size(); ++k) {
    for (const auto& entry : x.digit[k].a) {
      if (entry == 0) continue;
      long v = static_cast<long>(k) + (x.p - 1) * padic_valuation(entry, x.p);
      if (v < best) best = v;
    }
  }
  return best;
}

}  // namespace qk

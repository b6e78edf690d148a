#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qkroots/poly.hpp"

namespace qk {

// Dense matrix over a field K. Entries are always constructed from an explicit
// sample so that fields with runtime context (modulus, conductor) stay valid.
template <class K>
struct Mat {
  long n = 0, m = 0;
  std::vector<K> a;

  Mat() = default;
  Mat(long rows, long cols, const K& fill) : n(rows), m(cols), a(static_cast<size_t>(rows * cols), fill) {}

  static Mat zero(long rows, long cols, const K& sample) { return Mat(rows, cols, kzero(sample)); }
  static Mat identity(long rows, const K& sample) {
    Mat r = zero(rows, rows, sample);
    for (long i = 0; i < rows; ++i) r(i, i) = kone(sample);
    return r;
  }

  K& operator()(long i, long j) { return a[static_cast<size_t>(i * m + j)]; }
  const K& operator()(long i, long j) const { return a[static_cast<size_t>(i * m + j)]; }

  K sample() const {
    if (a.empty()) throw std::domain_error("sample of empty matrix");
    return kone(a.front());
  }
  bool is_zero() const {
    for (const auto& x : a)
      if (!kis_zero(x)) return false;
    return true;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    if (x.n != y.n || x.m != y.m) throw std::invalid_argument("matrix shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    if (x.n != y.n || x.m != y.m) throw std::invalid_argument("matrix shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
    return r;
  }
  Mat operator-() const {
    Mat r = *this;
    for (auto& x : r.a) x = kzero(x) - x;
    return r;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.m != y.n) throw std::invalid_argument("matrix shape mismatch in product");
    Mat r = zero(x.n, y.m, x.a.empty() ? y.sample() : x.a.front());
    for (long i = 0; i < x.n; ++i)
      for (long k = 0; k < x.m; ++k) {
        const K& xi = x(i, k);
        if (kis_zero(xi)) continue;
        for (long j = 0; j < y.m; ++j) r(i, j) = r(i, j) + xi * y(k, j);
      }
    return r;
  }
  friend Mat operator*(const K& s, const Mat& x) {
    Mat r = x;
    for (auto& v : r.a) v = s * v;
    return r;
  }
  friend bool operator==(const Mat& x, const Mat& y) {
    if (x.n != y.n || x.m != y.m) return false;
    for (size_t i = 0; i < x.a.size(); ++i)
      if (!kis_zero(x.a[i] - y.a[i])) return false;
    return true;
  }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

  K trace() const {
    if (n != m) throw std::invalid_argument("trace of non-square matrix");
    K t = kzero(sample());
    for (long i = 0; i < n; ++i) t = t + (*this)(i, i);
    return t;
  }
};

// Gaussian elimination with first-nonzero pivoting; returns det and rank, and
// optionally accumulates the inverse.
template <class K>
K mat_det(Mat<K> x) {
  if (x.n != x.m) throw std::invalid_argument("det of non-square matrix");
  K det = kone(x.sample());
  for (long col = 0; col < x.n; ++col) {
    long piv = -1;
    for (long r = col; r < x.n; ++r)
      if (!kis_zero(x(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) return kzero(x.sample());
    if (piv != col) {
      for (long j = 0; j < x.m; ++j) std::swap(x(piv, j), x(col, j));
      det = kzero(det) - det;
    }
    det = det * x(col, col);
    K inv = kone(x(col, col)) / x(col, col);
    for (long r = col + 1; r < x.n; ++r) {
      if (kis_zero(x(r, col))) continue;
      K f = x(r, col) * inv;
      for (long j = col; j < x.m; ++j) x(r, j) = x(r, j) - f * x(col, j);
    }
  }
  return det;
}

template <class K>
Mat<K> mat_inverse(const Mat<K>& x) {
  if (x.n != x.m) throw std::invalid_argument("inverse of non-square matrix");
  long n = x.n;
  Mat<K> w = x, inv = Mat<K>::identity(n, x.sample());
  for (long col = 0; col < n; ++col) {
    long piv = -1;
    for (long r = col; r < n; ++r)
      if (!kis_zero(w(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("matrix is singular");
    if (piv != col)
      for (long j = 0; j < n; ++j) {
        std::swap(w(piv, j), w(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    K f = kone(w(col, col)) / w(col, col);
    for (long j = 0; j < n; ++j) {
      w(col, j) = f * w(col, j);
      inv(col, j) = f * inv(col, j);
    }
    for (long r = 0; r < n; ++r) {
      if (r == col || kis_zero(w(r, col))) continue;
      K g = w(r, col);
      for (long j = 0; j < n; ++j) {
        w(r, j) = w(r, j) - g * w(col, j);
        inv(r, j) = inv(r, j) - g * inv(col, j);
      }
    }
  }
  return inv;
}

// Solve A X = B for X (A square nonsingular).
template <class K>
Mat<K> mat_solve(const Mat<K>& A, const Mat<K>& B) {
  if (A.n != A.m || A.n != B.n) throw std::invalid_argument("mat_solve shape mismatch");
  long n = A.n, m = B.m;
  Mat<K> w = A, rhs = B;
  for (long col = 0; col < n; ++col) {
    long piv = -1;
    for (long r = col; r < n; ++r)
      if (!kis_zero(w(r, col))) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("singular system");
    if (piv != col)
      for (long j = 0; j < n; ++j) std::swap(w(piv, j), w(col, j));
    if (piv != col)
      for (long j = 0; j < m; ++j) std::swap(rhs(piv, j), rhs(col, j));
    K f = kone(w(col, col)) / w(col, col);
    for (long j = 0; j < n; ++j) w(col, j) = f * w(col, j);
    for (long j = 0; j < m; ++j) rhs(col, j) = f * rhs(col, j);
    for (long r = 0; r < n; ++r) {
      if (r == col || kis_zero(w(r, col))) continue;
      K g = w(r, col);
      for (long j = 0; j < n; ++j) w(r, j) = w(r, j) - g * w(col, j);
      for (long j = 0; j < m; ++j) rhs(r, j) = rhs(r, j) - g * rhs(col, j);
    }
  }
  return rhs;
}

// Characteristic polynomial det(T*I - X) as a polynomial in T, computed from
// sums of principal minors.
template <class K>
Poly<K> mat_charpoly(const Mat<K>& x) {
  if (x.n != x.m) throw std::invalid_argument("charpoly of non-square matrix");
  long n = x.n;
  K one = kone(x.sample());
  std::vector<K> e(static_cast<size_t>(n) + 1, kzero(one));
  e[0] = one;
  // e[k] = sum of k x k principal minors, via subset enumeration (n is small).
  for (long mask = 1; mask < (1L << n); ++mask) {
    std::vector<long> idx;
    for (long i = 0; i < n; ++i)
      if (mask & (1L << i)) idx.push_back(i);
    long k = static_cast<long>(idx.size());
    Mat<K> sub = Mat<K>::zero(k, k, one);
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j) sub(i, j) = x(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    e[static_cast<size_t>(k)] = e[static_cast<size_t>(k)] + mat_det(sub);
  }
  Poly<K> p;
  p.c.assign(static_cast<size_t>(n) + 1, kzero(one));
  bool neg = false;
  for (long k = 0; k <= n; ++k) {
    K v = e[static_cast<size_t>(k)];
    neg = (k % 2) == 1;
    p.c[static_cast<size_t>(n - k)] = neg ? kzero(one) - v : v;
  }
  p.trim();
  return p;
}

}  // namespace qk

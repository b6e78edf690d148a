#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkroots/numeric.hpp"

namespace qk {

// Bethe system for the cotangent bundle of Gr(k, n): unknowns x_1..x_k,
// equilibrium parameters a_1..a_n, anisotropy hb, Kahler parameter z.
struct BetheParams {
  long k = 1, n = 2;
  std::vector<Cd> a;
  Cd hb;
  Cd z;
  int zsharp_sign = +1;  // branch choice of hb^{1/2} for odd n
};

// z# = z * (-hb^{1/2})^{-n}; reduces to z * hb^{-n/2} for even n.
inline Cd bethe_zsharp(const BetheParams& P) {
  Cd half = std::sqrt(P.hb);
  if (P.zsharp_sign < 0) half = -half;
  return P.z * cd_pow(-half, -P.n);
}

// Left-hand sides B_m(x) of the Bethe equations:
//   prod_j (x_m - a_j)/(a_j - hb x_m) * prod_{i != m} (x_i - hb x_m)/(hb x_i - x_m) - z#.
inline std::vector<Cd> bethe_residual(const BetheParams& P, const std::vector<Cd>& x) {
  if (static_cast<long>(x.size()) != P.k) throw std::invalid_argument("bethe_residual: wrong arity");
  Cd zs = bethe_zsharp(P);
  std::vector<Cd> B(static_cast<size_t>(P.k));
  for (long m = 0; m < P.k; ++m) {
    Cd prod(1, 0);
    for (long j = 0; j < P.n; ++j)
      prod *= (x[static_cast<size_t>(m)] - P.a[static_cast<size_t>(j)]) /
              (P.a[static_cast<size_t>(j)] - P.hb * x[static_cast<size_t>(m)]);
    for (long i = 0; i < P.k; ++i) {
      if (i == m) continue;
      prod *= (x[static_cast<size_t>(i)] - P.hb * x[static_cast<size_t>(m)]) /
              (P.hb * x[static_cast<size_t>(i)] - x[static_cast<size_t>(m)]);
    }
    B[static_cast<size_t>(m)] = prod - zs;
  }
  return B;
}

namespace detail {

// Value and gradient of each factor chain by the product rule (stable when
// individual factors vanish), giving the exact Jacobian dB_m/dx_c.
inline void bethe_jacobian(const BetheParams& P, const std::vector<Cd>& x, std::vector<std::vector<Cd>>& J) {
  long k = P.k;
  J.assign(static_cast<size_t>(k), std::vector<Cd>(static_cast<size_t>(k), Cd(0, 0)));
  for (long m = 0; m < k; ++m) {
    struct Factor {
      Cd value;
      std::vector<Cd> grad;  // d value / d x_c
    };
    std::vector<Factor> fs;
    for (long j = 0; j < P.n; ++j) {
      Cd g = x[static_cast<size_t>(m)] - P.a[static_cast<size_t>(j)];
      Cd h = P.a[static_cast<size_t>(j)] - P.hb * x[static_cast<size_t>(m)];
      Factor f;
      f.value = g / h;
      f.grad.assign(static_cast<size_t>(k), Cd(0, 0));
      // d/dx_m of g/h with dg = 1, dh = -hb.
      f.grad[static_cast<size_t>(m)] = (h + g * P.hb) / (h * h);
      fs.push_back(std::move(f));
    }
    for (long i = 0; i < k; ++i) {
      if (i == m) continue;
      Cd g = x[static_cast<size_t>(i)] - P.hb * x[static_cast<size_t>(m)];
      Cd h = P.hb * x[static_cast<size_t>(i)] - x[static_cast<size_t>(m)];
      Factor f;
      f.value = g / h;
      f.grad.assign(static_cast<size_t>(k), Cd(0, 0));
      // dg/dx_i = 1, dg/dx_m = -hb; dh/dx_i = hb, dh/dx_m = -1.
      f.grad[static_cast<size_t>(i)] = (h - g * P.hb) / (h * h);
      f.grad[static_cast<size_t>(m)] = (-P.hb * h + g) / (h * h);
      fs.push_back(std::move(f));
    }
    size_t t = fs.size();
    std::vector<Cd> prefix(t + 1, Cd(1, 0)), suffix(t + 1, Cd(1, 0));
    for (size_t s = 0; s < t; ++s) prefix[s + 1] = prefix[s] * fs[s].value;
    for (size_t s = t; s-- > 0;) suffix[s] = suffix[s + 1] * fs[s].value;
    for (long c = 0; c < k; ++c) {
      Cd acc(0, 0);
      for (size_t s = 0; s < t; ++s) acc += prefix[s] * fs[s].grad[static_cast<size_t>(c)] * suffix[s + 1];
      J[static_cast<size_t>(m)][static_cast<size_t>(c)] = acc;
    }
  }
}

inline std::vector<Cd> solve_linear(std::vector<std::vector<Cd>> A, std::vector<Cd> b) {
  long n = static_cast<long>(b.size());
  for (long col = 0; col < n; ++col) {
    long piv = col;
    double best = std::abs(A[static_cast<size_t>(col)][static_cast<size_t>(col)]);
    for (long r = col + 1; r < n; ++r) {
      double v = std::abs(A[static_cast<size_t>(r)][static_cast<size_t>(col)]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) throw std::domain_error("singular Jacobian");
    std::swap(A[static_cast<size_t>(piv)], A[static_cast<size_t>(col)]);
    std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(col)]);
    for (long r = col + 1; r < n; ++r) {
      Cd f = A[static_cast<size_t>(r)][static_cast<size_t>(col)] / A[static_cast<size_t>(col)][static_cast<size_t>(col)];
      if (f == Cd(0, 0)) continue;
      for (long j = col; j < n; ++j)
        A[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * A[static_cast<size_t>(col)][static_cast<size_t>(j)];
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
    }
  }
  std::vector<Cd> x(static_cast<size_t>(n));
  for (long i = n - 1; i >= 0; --i) {
    Cd s = b[static_cast<size_t>(i)];
    for (long j = i + 1; j < n; ++j) s -= A[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] = s / A[static_cast<size_t>(i)][static_cast<size_t>(i)];
  }
  return x;
}

inline double residual_norm(const std::vector<Cd>& v) {
  double s = 0;
  for (const auto& c : v) s = std::max(s, std::abs(c));
  return s;
}

}  // namespace detail

// Damped Newton iteration; returns true when the residual drops below tol.
inline bool bethe_newton(const BetheParams& P, std::vector<Cd>& x, double tol, int max_iter = 40) {
  std::vector<std::vector<Cd>> J;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<Cd> B = bethe_residual(P, x);
    double r0 = detail::residual_norm(B);
    if (r0 < tol) return true;
    detail::bethe_jacobian(P, x, J);
    std::vector<Cd> minusB(B.size());
    for (size_t i = 0; i < B.size(); ++i) minusB[i] = -B[i];
    std::vector<Cd> dx;
    try {
      dx = detail::solve_linear(J, minusB);
    } catch (const std::domain_error&) {
      return false;
    }
    double damp = 1.0;
    for (int half = 0; half < 6; ++half) {
      std::vector<Cd> cand = x;
      for (size_t i = 0; i < cand.size(); ++i) cand[i] += damp * dx[i];
      double r1 = detail::residual_norm(bethe_residual(P, cand));
      if (r1 < r0 || r1 < tol) {
        x = std::move(cand);
        break;
      }
      damp *= 0.5;
      if (half == 5) x = std::move(cand);
    }
  }
  return detail::residual_norm(bethe_residual(P, x)) < tol;
}

// k = 1: the cleared equation prod_j (x - a_j) - z# prod_j (a_j - hb x) = 0,
// solved through companion-matrix eigenvalues.
inline std::vector<Cd> bethe_solve_k1(const BetheParams& P) {
  if (P.k != 1) throw std::invalid_argument("bethe_solve_k1 requires k = 1");
  Cd zs = bethe_zsharp(P);
  std::vector<Cd> c1{Cd(1, 0)};
  std::vector<Cd> c2{Cd(1, 0)};
  for (long j = 0; j < P.n; ++j) {
    const Cd& aj = P.a[static_cast<size_t>(j)];
    std::vector<Cd> n1(c1.size() + 1, Cd(0, 0)), n2(c2.size() + 1, Cd(0, 0));
    for (size_t t = 0; t < c1.size(); ++t) {
      n1[t] += c1[t] * (-aj);
      n1[t + 1] += c1[t];
    }
    for (size_t t = 0; t < c2.size(); ++t) {
      n2[t] += c2[t] * aj;
      n2[t + 1] += c2[t] * (-P.hb);
    }
    c1 = std::move(n1);
    c2 = std::move(n2);
  }
  std::vector<Cd> poly(c1.size());
  for (size_t t = 0; t < c1.size(); ++t) poly[t] = c1[t] - zs * c2[t];
  return poly_roots_companion(poly);
}

struct HomotopyResult {
  std::vector<std::vector<Cd>> solutions;
  long expected = 0;
  double max_residual = 0;
  double min_pairwise = 1e300;
  bool complete = false;
  std::string note;
};

// Path-following from z = 0, where the solutions are the k-subsets of the
// equilibrium parameters.  The first move off t = 0 uses the diagonal implicit
// derivative; afterwards damped Newton tracks the straight segment to t = 1
// with step halving down to 1e-12.
inline HomotopyResult bethe_solve_homotopy(const BetheParams& target, double tol = 1e-10) {
  HomotopyResult out;
  long k = target.k, n = target.n;
  std::vector<long> comb(static_cast<size_t>(k));
  for (long i = 0; i < k; ++i) comb[static_cast<size_t>(i)] = i;
  long count = 1;
  for (long i = 0; i < k; ++i) count = count * (n - i) / (i + 1);
  out.expected = count;
  Cd zs_full = bethe_zsharp(target);
  auto params_at = [&](double t) {
    BetheParams P = target;
    P.z = target.z * t;
    return P;
  };
  while (true) {
    // Analytic first step: x_m = a_{j_m} + t1 * zs(t1) / Q_m + O(t^2), with
    // Q_m the product of the remaining factors at the base point.
    double t1 = 1e-3;
    std::vector<Cd> x(static_cast<size_t>(k));
    bool degenerate = false;
    for (long m = 0; m < k && !degenerate; ++m) {
      Cd base = target.a[static_cast<size_t>(comb[static_cast<size_t>(m)])];
      Cd Q(1, 0);
      for (long j = 0; j < n; ++j) {
        if (j == comb[static_cast<size_t>(m)]) {
          Q /= (target.a[static_cast<size_t>(j)] - target.hb * base);
          continue;
        }
        Q *= (base - target.a[static_cast<size_t>(j)]) / (target.a[static_cast<size_t>(j)] - target.hb * base);
      }
      for (long i = 0; i < k; ++i) {
        if (i == m) continue;
        Cd xi = target.a[static_cast<size_t>(comb[static_cast<size_t>(i)])];
        Q *= (xi - target.hb * base) / (target.hb * xi - base);
      }
      if (std::abs(Q) < 1e-14) {
        degenerate = true;
        break;
      }
      x[static_cast<size_t>(m)] = base + t1 * zs_full / Q;
    }
    bool path_ok = !degenerate;
    if (path_ok) {
      double t = t1;
      if (!bethe_newton(params_at(t), x, 1e-8)) path_ok = false;
      double step = 0.05;
      while (path_ok && t < 1.0) {
        double tn = std::min(1.0, t + step);
        std::vector<Cd> cand = x;
        bool ok = bethe_newton(params_at(tn), cand, tn >= 1.0 ? tol : 1e-8);
        bool collided = false;
        if (ok)
          for (long i = 0; i < k && !collided; ++i)
            for (long j = i + 1; j < k; ++j)
              if (std::abs(cand[static_cast<size_t>(i)] - cand[static_cast<size_t>(j)]) < 1e-9) collided = true;
        if (ok && !collided) {
          x = std::move(cand);
          t = tn;
          step = std::min(0.25, step * 1.6);
        } else {
          step *= 0.5;
          if (step < 1e-12) {
            path_ok = false;
            out.note += "path stalled; ";
          }
        }
      }
    } else {
      out.note += "degenerate start; ";
    }
    if (path_ok) {
      double r = detail::residual_norm(bethe_residual(target, x));
      out.max_residual = std::max(out.max_residual, r);
      bool dup = false;
      for (const auto& s : out.solutions) {
        double d = 0;
        for (long i = 0; i < k; ++i) d = std::max(d, std::abs(s[static_cast<size_t>(i)] - x[static_cast<size_t>(i)]));
        // Solutions are unordered tuples; compare as sorted multisets.
        std::vector<Cd> s1 = s, s2 = x;
        auto key = [](const Cd& u, const Cd& v) {
          if (u.real() != v.real()) return u.real() < v.real();
          return u.imag() < v.imag();
        };
        std::sort(s1.begin(), s1.end(), key);
        std::sort(s2.begin(), s2.end(), key);
        double dm = 0;
        for (long i = 0; i < k; ++i) dm = std::max(dm, std::abs(s1[static_cast<size_t>(i)] - s2[static_cast<size_t>(i)]));
        if (std::min(d, dm) < 1e-6) {
          dup = true;
          break;
        }
      }
      if (!dup) out.solutions.push_back(x);
    }
    // Next k-subset in lexicographic order.
    long pos = k - 1;
    while (pos >= 0 && comb[static_cast<size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++comb[static_cast<size_t>(pos)];
    for (long i = pos + 1; i < k; ++i) comb[static_cast<size_t>(i)] = comb[static_cast<size_t>(i - 1)] + 1;
  }
  for (size_t i = 0; i < out.solutions.size(); ++i)
    for (size_t j = i + 1; j < out.solutions.size(); ++j) {
      double d = 0;
      for (long t = 0; t < k; ++t)
        d = std::max(d, std::abs(out.solutions[i][static_cast<size_t>(t)] - out.solutions[j][static_cast<size_t>(t)]));
      out.min_pairwise = std::min(out.min_pairwise, d);
    }
  out.complete = static_cast<long>(out.solutions.size()) == out.expected;
  return out;
}

// Residual of the entrywise p-th power of a solution in the parameter-powered
// system (a -> a^p, hb -> hb^p, z -> z^p).
inline double bethe_powered_residual(const BetheParams& P, const std::vector<Cd>& x, long p) {
  BetheParams Q = P;
  for (auto& aj : Q.a) aj = cd_pow(aj, p);
  Q.hb = cd_pow(P.hb, p);
  Q.z = cd_pow(P.z, p);
  std::vector<Cd> xp(x.size());
  for (size_t i = 0; i < x.size(); ++i) xp[i] = cd_pow(x[i], p);
  return detail::residual_norm(bethe_residual(Q, xp));
}

}  // namespace qk

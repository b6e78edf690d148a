#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "qkroots/matrix.hpp"
#include "qkroots/rational.hpp"

namespace qk {

inline Cd cd_pow(Cd x, long e) {
  if (e < 0) return 1.0 / cd_pow(x, -e);
  Cd r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

inline Cd root_of_unity(long p, long k = 1) {
  const double tau = 6.283185307179586476925287;
  double arg = tau * static_cast<double>(((k % p) + p) % p) / static_cast<double>(p);
  return Cd(std::cos(arg), std::sin(arg));
}

// Eigenvalues of a 2x2 complex matrix by the quadratic formula.
inline std::pair<Cd, Cd> eig2x2(const Mat<Cd>& m) {
  if (m.n != 2 || m.m != 2) throw std::invalid_argument("eig2x2 needs a 2x2 matrix");
  Cd tr = m(0, 0) + m(1, 1);
  Cd det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Cd disc = std::sqrt(tr * tr - 4.0 * det);
  // Pick the sign that avoids cancellation in the larger root.
  Cd s = (std::norm(tr + disc) >= std::norm(tr - disc)) ? disc : -disc;
  Cd l1 = (tr + s) / 2.0;
  Cd l2 = (std::abs(l1) > 0.0) ? det / l1 : (tr - s) / 2.0;
  return {l1, l2};
}

// --- roots of a complex polynomial via its companion matrix ----------------

namespace detail {

// Shifted QR iteration on a complex upper Hessenberg matrix (small n).
inline std::vector<Cd> hessenberg_eigenvalues(std::vector<std::vector<Cd>> h) {
  long n = static_cast<long>(h.size());
  std::vector<Cd> eig;
  eig.reserve(static_cast<size_t>(n));
  long hi = n - 1;
  long iter = 0;
  const long max_iter_per = 200;
  long budget = max_iter_per * n;
  while (hi >= 0) {
    if (hi == 0) {
      eig.push_back(h[0][0]);
      --hi;
      continue;
    }
    double sub = std::abs(h[static_cast<size_t>(hi)][static_cast<size_t>(hi - 1)]);
    double scale = std::abs(h[static_cast<size_t>(hi)][static_cast<size_t>(hi)]) +
                   std::abs(h[static_cast<size_t>(hi - 1)][static_cast<size_t>(hi - 1)]);
    if (sub <= 1e-14 * (scale > 0 ? scale : 1.0)) {
      eig.push_back(h[static_cast<size_t>(hi)][static_cast<size_t>(hi)]);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > budget) throw std::runtime_error("eigenvalue iteration failed to converge");
    // Wilkinson shift from the trailing 2x2 block.
    Cd a = h[static_cast<size_t>(hi - 1)][static_cast<size_t>(hi - 1)];
    Cd b = h[static_cast<size_t>(hi - 1)][static_cast<size_t>(hi)];
    Cd c = h[static_cast<size_t>(hi)][static_cast<size_t>(hi - 1)];
    Cd d = h[static_cast<size_t>(hi)][static_cast<size_t>(hi)];
    Cd tr = a + d, det = a * d - b * c;
    Cd disc = std::sqrt(tr * tr - 4.0 * det);
    Cd l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
    Cd shift = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
    // Explicit shifted QR step: factor H - shift*I = QR by Givens rotations,
    // then form RQ + shift*I.
    long m = hi + 1;
    for (long i = 0; i < m; ++i) h[static_cast<size_t>(i)][static_cast<size_t>(i)] -= shift;
    std::vector<Cd> cs(static_cast<size_t>(m), Cd(1, 0)), sn(static_cast<size_t>(m), Cd(0, 0));
    for (long k = 0; k < m - 1; ++k) {
      Cd x = h[static_cast<size_t>(k)][static_cast<size_t>(k)];
      Cd y = h[static_cast<size_t>(k + 1)][static_cast<size_t>(k)];
      double r = std::hypot(std::abs(x), std::abs(y));
      Cd ck(1.0, 0.0), sk(0.0, 0.0);
      if (r > 0) {
        ck = std::conj(x) / r;
        sk = std::conj(y) / r;
      }
      cs[static_cast<size_t>(k)] = ck;
      sn[static_cast<size_t>(k)] = sk;
      for (long j = k; j < m; ++j) {
        Cd t1 = h[static_cast<size_t>(k)][static_cast<size_t>(j)];
        Cd t2 = h[static_cast<size_t>(k + 1)][static_cast<size_t>(j)];
        h[static_cast<size_t>(k)][static_cast<size_t>(j)] = ck * t1 + sk * t2;
        h[static_cast<size_t>(k + 1)][static_cast<size_t>(j)] = -std::conj(sk) * t1 + std::conj(ck) * t2;
      }
    }
    for (long k = 0; k < m - 1; ++k) {
      Cd ck = cs[static_cast<size_t>(k)], sk = sn[static_cast<size_t>(k)];
      for (long i = 0; i <= std::min<long>(k + 1, m - 1); ++i) {
        Cd t1 = h[static_cast<size_t>(i)][static_cast<size_t>(k)];
        Cd t2 = h[static_cast<size_t>(i)][static_cast<size_t>(k + 1)];
        h[static_cast<size_t>(i)][static_cast<size_t>(k)] = t1 * std::conj(ck) + t2 * std::conj(sk);
        h[static_cast<size_t>(i)][static_cast<size_t>(k + 1)] = -t1 * sk + t2 * ck;
      }
    }
    for (long i = 0; i < m; ++i) h[static_cast<size_t>(i)][static_cast<size_t>(i)] += shift;
  }
  return eig;
}

}  // namespace detail

// Roots of sum_k coeff[k] x^k (leading coefficient nonzero) via eigenvalues of
// the companion matrix, with a few Newton polishing steps per root.
inline std::vector<Cd> poly_roots_companion(std::vector<Cd> coeff) {
  while (!coeff.empty() && std::abs(coeff.back()) == 0.0) coeff.pop_back();
  if (coeff.size() < 2) throw std::invalid_argument("poly_roots_companion: degree must be >= 1");
  long deg = static_cast<long>(coeff.size()) - 1;
  Cd lead = coeff.back();
  for (auto& c : coeff) c /= lead;
  std::vector<std::vector<Cd>> h(static_cast<size_t>(deg), std::vector<Cd>(static_cast<size_t>(deg), Cd(0, 0)));
  for (long i = 0; i < deg; ++i) h[static_cast<size_t>(i)][static_cast<size_t>(deg - 1)] = -coeff[static_cast<size_t>(i)];
  for (long i = 1; i < deg; ++i) h[static_cast<size_t>(i)][static_cast<size_t>(i - 1)] = Cd(1, 0);
  std::vector<Cd> roots = detail::hessenberg_eigenvalues(std::move(h));
  auto eval = [&](Cd x, Cd& val, Cd& der) {
    val = Cd(0, 0);
    der = Cd(0, 0);
    for (long k = deg; k >= 0; --k) {
      der = der * x + val;
      val = val * x + coeff[static_cast<size_t>(k)];
    }
  };
  for (auto& r : roots) {
    for (int it = 0; it < 8; ++it) {
      Cd v, d;
      eval(r, v, d);
      if (std::abs(v) == 0.0 || std::abs(d) == 0.0) break;
      Cd step = v / d;
      r -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
    }
  }
  return roots;
}

// --- multiset comparison -----------------------------------------------------

// Pair two equal-length complex multisets minimizing the worst relative
// distance; returns that distance.  Brute-force over permutations for small n,
// greedy otherwise.
inline double pair_multisets_max_reldist(const std::vector<Cd>& a, const std::vector<Cd>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("pair_multisets: size mismatch");
  size_t n = a.size();
  auto reldist = [](const Cd& x, const Cd& y) {
    double s = std::max(1.0, std::max(std::abs(x), std::abs(y)));
    return std::abs(x - y) / s;
  };
  if (n <= 6) {
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double worst = 0;
      for (size_t i = 0; i < n; ++i) worst = std::max(worst, reldist(a[i], b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> used(n, false);
  double worst = 0;
  for (size_t i = 0; i < n; ++i) {
    double bd = 1e300;
    size_t bj = 0;
    for (size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      double d = reldist(a[i], b[j]);
      if (d < bd) {
        bd = d;
        bj = j;
      }
    }
    used[bj] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

// --- seeded parameter draws --------------------------------------------------

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(gen);
  }
  long uniform_int(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(gen);
  }
  // Nonzero rational with numerator in [-8, 8] and denominator in [1, 8].
  Rat small_rational() {
    long num = 0;
    while (num == 0) num = uniform_int(-8, 8);
    return Rat(num, uniform_int(1, 8));
  }
  Cd annulus(double rlo, double rhi) {
    double r = uniform(rlo, rhi);
    double th = uniform(0.0, 6.283185307179586);
    return Cd(r * std::cos(th), r * std::sin(th));
  }
};

// Rational parameter draw for the rank-2 model: a1 != a2 nonzero, hb outside
// {0, 1, -1}, and the ratio a1/a2 kept away from small even powers of hb so
// the constant part has well-separated spectrum at every relevant shift.
struct RationalModelDraw {
  Rat a1, a2, hb;
};

inline RationalModelDraw draw_rational_model(Rng& rng) {
  while (true) {
    Rat a1 = rng.small_rational(), a2 = rng.small_rational(), hb = rng.small_rational();
    if (a1 == a2 || hb == 0 || hb == 1 || hb == -1) continue;
    bool bad = false;
    double ratio = std::abs(a1.get_d() / a2.get_d());
    double habs = std::abs(hb.get_d());
    for (long k = -4; k <= 4 && !bad; ++k) {
      double target = std::pow(habs, 2.0 * static_cast<double>(k));
      if (std::abs(ratio - target) < 1e-3) bad = true;
    }
    if (bad) continue;
    return {a1, a2, hb};
  }
}

}  // namespace qk

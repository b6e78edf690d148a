#include "qkroots/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

#include "qkroots/bethe.hpp"
#include "qkroots/frobenius.hpp"
#include "qkroots/matfile.hpp"
#include "qkroots/pcurvature.hpp"
#include "qkroots/qde.hpp"
#include "qkroots/vertex.hpp"

namespace qk {
namespace {

// --- deterministic per-case seeding -----------------------------------------

unsigned long long splitmix64(unsigned long long x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

unsigned long long case_seed(unsigned long long seed, const std::string& check, long index) {
  unsigned long long h = 1469598103934665603ull;
  for (char ch : check) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  return splitmix64(splitmix64(h ^ seed) + static_cast<unsigned long long>(index));
}

// --- JSON encoding helpers ---------------------------------------------------

Json rat_json(const Rat& r) { return r.get_str(); }
Json cplx_json(const Cd& c) { return Json::array({c.real(), c.imag()}); }

Json cplx_list_json(const std::vector<Cd>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(cplx_json(c));
  return out;
}

// --- config access helpers ---------------------------------------------------

[[noreturn]] void config_fail(const std::string& what) { throw ConfigError("config: " + what); }

double tolerance_or(const CheckContext& ctx, const char* key, double fallback) {
  if (ctx.cfg.tolerances.contains(key)) return ctx.cfg.tolerances[key].get<double>();
  return fallback;
}

long draws_or(const CheckContext& ctx, long fallback) {
  return ctx.cfg.draws >= 0 ? ctx.cfg.draws : fallback;
}

std::vector<long> primes_or(const CheckContext& ctx, std::vector<long> fallback) {
  return ctx.cfg.primes.empty() ? std::move(fallback) : ctx.cfg.primes;
}

void require_prime_list(const std::vector<long>& primes, const std::string& check) {
  for (long p : primes)
    if (!is_prime(p)) config_fail("'" + check + "' requires prime entries in 'primes', got " + std::to_string(p));
}

std::string mode_or(const CheckContext& ctx, const std::string& fallback) {
  return ctx.cfg.mode.empty() ? fallback : ctx.cfg.mode;
}

bool explicit_mode(const CheckContext& ctx) { return mode_or(ctx, "") == "explicit"; }

Rat param_rat(const Json& params, const std::string& key) {
  if (!params.contains(key)) config_fail("explicit mode requires params." + key);
  const Json& v = params[key];
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (v.is_string()) {
    try {
      Rat r(v.get<std::string>());
      r.canonicalize();
      return r;
    } catch (const std::exception&) {
      config_fail("params." + key + " is not a rational (use \"num/den\" or an integer)");
    }
  }
  config_fail("params." + key + " must be an integer or a rational string");
}

long param_int(const Json& params, const std::string& key, long fallback, bool required = false) {
  if (!params.contains(key)) {
    if (required) config_fail("explicit mode requires params." + key);
    return fallback;
  }
  if (!params[key].is_number_integer()) config_fail("params." + key + " must be an integer");
  return params[key].get<long>();
}

double param_double(const Json& params, const std::string& key, double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_number()) config_fail("params." + key + " must be a number");
  return params[key].get<double>();
}

Cd param_cplx(const Json& v, const std::string& key) {
  if (v.is_number()) return Cd(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Cd(v[0].get<double>(), v[1].get<double>());
  config_fail("params." + key + " must be a number or [re, im]");
}

// --- worker pool --------------------------------------------------------------

std::vector<CaseRecord> run_cases(long count, long jobs, const std::function<void(long, CaseRecord&)>& fn) {
  std::vector<CaseRecord> out(static_cast<size_t>(count));
  std::atomic<long> next{0};
  auto worker = [&]() {
    while (true) {
      long i = next.fetch_add(1);
      if (i >= count) return;
      CaseRecord& rec = out[static_cast<size_t>(i)];
      rec.index = i;
      auto t0 = std::chrono::steady_clock::now();
      try {
        fn(i, rec);
      } catch (const std::exception& e) {
        rec.status = CaseStatus::kFail;
        rec.data["error"] = e.what();
      }
      rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  long workers = std::max(1L, std::min(jobs, count));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (long w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

void set_status(CaseRecord& rec, bool pass) { rec.status = pass ? CaseStatus::kPass : CaseStatus::kFail; }

// --- shared draws --------------------------------------------------------------

struct NumericModelDraw {
  Cd a1, a2, hbq, z;
};

// Rank-2 model windows: moderate moduli, separated equivariant parameters,
// |hb^2 z| < 1 so the shift matrix is regular on the whole grid.
NumericModelDraw draw_numeric_model(Rng& rng) {
  while (true) {
    Cd a1 = rng.annulus(0.8, 1.5), a2 = rng.annulus(0.8, 1.5);
    if (std::abs(a1 - a2) < 0.2) continue;
    Cd hbq = rng.annulus(1.15, 1.45);
    Cd z = rng.annulus(0.05, 0.2);
    return {a1, a2, hbq, z};
  }
}

BetheParams draw_k2_system(Rng& rng) {
  BetheParams P;
  P.k = 2;
  P.n = 4;
  double base[4] = {0.7, 1.17, 1.63, 2.1};
  P.a.resize(4);
  for (int j = 0; j < 4; ++j)
    P.a[static_cast<size_t>(j)] = Cd(base[j] + rng.uniform(-0.05, 0.05), rng.uniform(-0.08, 0.08));
  P.hb = Cd(rng.uniform(1.5, 2.5), rng.uniform(0.1, 0.4));
  P.z = Cd(rng.uniform(0.02, 0.08), rng.uniform(0.0, 0.03));
  return P;
}

Mat<Cd> ascending_product_at(const ModelImage<Cd>& im, const Cd& z, long p, long primitive_power) {
  Cd zeta = root_of_unity(p, primitive_power);
  Mat<Cd> prod = Mat<Cd>::identity(2, Cd(1, 0));
  Cd mult(1, 0);
  for (long j = 0; j < p; ++j) {
    prod = prod * mcal_at(im, z * mult * zeta);
    mult *= zeta;
  }
  return prod;
}

std::vector<Cd> eig_list(const Mat<Cd>& m) {
  auto e = eig2x2(m);
  return {e.first, e.second};
}

// --- check: qde-char ------------------------------------------------------------

void qde_char_case(const Rat& a1, const Rat& a2, const Rat& hb, long p, CaseRecord& rec) {
  Model m = build_model("tpp1", a1, a2, hb);
  rec.parameters["model"] = "tpp1";
  rec.parameters["a1"] = rat_json(a1);
  rec.parameters["a2"] = rat_json(a2);
  rec.parameters["hb"] = rat_json(hb);
  rec.parameters["p"] = p;
  bool zero = false;
  if (p == 1) {
    ModelImage<Rat> im = model_image(m, Rat(1));
    auto prod = iterated_product_exact(im, Rat(1), 1, true);
    zero = characteristic_residual(prod, im, 1).is_zero();
  } else {
    CycloNum one(p, Rat(1));
    ModelImage<CycloNum> im = model_image(m, one);
    auto prod = iterated_product_exact(im, CycloNum::zeta(p), p, true);
    zero = characteristic_residual(prod, im, p).is_zero();
  }
  rec.data["residual_zero"] = zero;
  set_status(rec, zero);
}

std::vector<CaseRecord> run_qde_char(const CheckContext& ctx) {
  if (explicit_mode(ctx)) {
    Rat a1 = param_rat(ctx.cfg.params, "a1");
    Rat a2 = param_rat(ctx.cfg.params, "a2");
    Rat hb = param_rat(ctx.cfg.params, "hb");
    long p = param_int(ctx.cfg.params, "p", 1);
    if (p != 1 && !is_prime(p)) config_fail("qde-char requires p = 1 or a prime");
    if (a1 == a2 || hb == 0) config_fail("qde-char requires a1 != a2 and hb != 0");
    return run_cases(1, 1, [&](long, CaseRecord& rec) { qde_char_case(a1, a2, hb, p, rec); });
  }
  std::vector<long> primes = primes_or(ctx, {1, 2, 3, 5});
  for (long p : primes)
    if (p != 1 && !is_prime(p)) config_fail("qde-char requires p = 1 or primes");
  std::vector<std::pair<long, long>> grid;  // (prime, draw)
  for (long p : primes) {
    long draws = draws_or(ctx, p == 1 ? 20 : 10);
    for (long t = 0; t < draws; ++t) grid.emplace_back(p, t);
  }
  return run_cases(static_cast<long>(grid.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    auto [p, t] = grid[static_cast<size_t>(i)];
    Rng rng(case_seed(ctx.seed, "qde-char", i));
    RationalModelDraw d = draw_rational_model(rng);
    rec.parameters["draw"] = t;
    qde_char_case(d.a1, d.a2, d.hb, p, rec);
  });
}

// --- check: qde-spectrum ----------------------------------------------------------

void qde_spectrum_case(const NumericModelDraw& d, long p, double pair_tol, double indep_tol, CaseRecord& rec) {
  rec.parameters["a1"] = cplx_json(d.a1);
  rec.parameters["a2"] = cplx_json(d.a2);
  rec.parameters["hb"] = cplx_json(d.hbq);
  rec.parameters["z"] = cplx_json(d.z);
  rec.parameters["p"] = p;
  ModelImage<Cd> im;
  im.N = 2;
  im.compose_q = true;
  im.a1 = d.a1;
  im.a2 = d.a2;
  im.hb = d.hbq;

  std::vector<Cd> eigs = eig_list(ascending_product_at(im, d.z, p, 1));

  BetheParams bp;
  bp.k = 1;
  bp.n = 2;
  bp.a = {cd_pow(d.a1, p), cd_pow(d.a2, p)};
  bp.hb = cd_pow(d.hbq * d.hbq, p);
  bp.z = cd_pow(d.z, p);
  std::vector<Cd> roots = bethe_solve_k1(bp);

  double dist = pair_multisets_max_reldist(eigs, roots);
  rec.data["eigenvalues"] = cplx_list_json(eigs);
  rec.data["bethe_roots"] = cplx_list_json(roots);
  rec.data["pairing_distance"] = dist;
  bool ok = dist <= pair_tol;
  if (p > 2) {
    std::vector<Cd> eigs2 = eig_list(ascending_product_at(im, d.z, p, 2));
    double idist = pair_multisets_max_reldist(eigs, eigs2);
    rec.data["primitive_root_distance"] = idist;
    ok = ok && idist <= indep_tol;
  }
  set_status(rec, ok);
}

std::vector<CaseRecord> run_qde_spectrum(const CheckContext& ctx) {
  double pair_tol = tolerance_or(ctx, "pairing", 1e-8);
  double indep_tol = tolerance_or(ctx, "independence", 1e-10);
  if (explicit_mode(ctx)) {
    NumericModelDraw d;
    d.a1 = param_cplx(ctx.cfg.params.contains("a1") ? ctx.cfg.params["a1"] : Json(), "a1");
    d.a2 = param_cplx(ctx.cfg.params.contains("a2") ? ctx.cfg.params["a2"] : Json(), "a2");
    d.hbq = param_cplx(ctx.cfg.params.contains("hb") ? ctx.cfg.params["hb"] : Json(), "hb");
    d.z = param_cplx(ctx.cfg.params.contains("z") ? ctx.cfg.params["z"] : Json(), "z");
    long p = param_int(ctx.cfg.params, "p", 2);
    if (!is_prime(p)) config_fail("qde-spectrum requires prime p");
    return run_cases(1, 1,
                     [&](long, CaseRecord& rec) { qde_spectrum_case(d, p, pair_tol, indep_tol, rec); });
  }
  std::vector<long> primes = primes_or(ctx, {2, 3, 5, 7});
  require_prime_list(primes, "qde-spectrum");
  long draws = draws_or(ctx, 50);
  std::vector<std::pair<long, long>> grid;
  for (long p : primes)
    for (long t = 0; t < draws; ++t) grid.emplace_back(p, t);
  return run_cases(static_cast<long>(grid.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    auto [p, t] = grid[static_cast<size_t>(i)];
    Rng rng(case_seed(ctx.seed, "qde-spectrum", i));
    NumericModelDraw d = draw_numeric_model(rng);
    if (t == 0) d.z = Cd(0, 0);  // product at z = 0 is L^p; roots are a_i^p
    rec.parameters["draw"] = t;
    qde_spectrum_case(d, p, pair_tol, indep_tol, rec);
  });
}

// --- check: frobenius-pole ---------------------------------------------------------

void frobenius_pole_case(const Model& m, long p, long D, CaseRecord& rec) {
  rec.parameters["model"] = m.name;
  rec.parameters["a1"] = rat_json(m.a1);
  rec.parameters["a2"] = rat_json(m.a2);
  rec.parameters["hb"] = rat_json(m.hb);
  rec.parameters["p"] = p;
  rec.parameters["D"] = D;
  IntertwinerData data = compute_intertwiner(m, p, D, FrobSubstitution::kPSquared);
  PoleCertificate certF = pole_certificate(data.F, p);
  PoleCertificate certPsi = pole_certificate(data.psi, p);
  IntertwinerData wrong = compute_intertwiner(m, p, D, FrobSubstitution::kP);
  PoleCertificate certWrong = pole_certificate(wrong.F, p);
  rec.data["intertwiner_regular"] = certF.pass;
  rec.data["uncompensated_regular"] = certPsi.pass;
  rec.data["uncompensated_first_bad_order"] = certPsi.first_bad_order;
  rec.data["plain_substitution_regular"] = certWrong.pass;
  rec.data["plain_substitution_first_bad_order"] = certWrong.first_bad_order;
  if (!certF.pass) {
    rec.data["first_bad_order"] = certF.first_bad_order;
    rec.data["bad_denominator"] = certF.bad_denominator;
  }
  set_status(rec, certF.pass && !certPsi.pass && !certWrong.pass);
}

std::vector<CaseRecord> run_frobenius_pole(const CheckContext& ctx) {
  std::vector<long> primes = primes_or(ctx, {2, 3});
  require_prime_list(primes, "frobenius-pole");
  if (explicit_mode(ctx)) {
    Rat a1 = param_rat(ctx.cfg.params, "a1");
    Rat a2 = param_rat(ctx.cfg.params, "a2");
    Rat hb = param_rat(ctx.cfg.params, "hb");
    return run_cases(static_cast<long>(primes.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
      long p = primes[static_cast<size_t>(i)];
      long D = ctx.cfg.D >= 0 ? ctx.cfg.D : 2 * p;
      frobenius_pole_case(build_model("tpp1", a1, a2, hb), p, D, rec);
    });
  }
  long draws = draws_or(ctx, 1);
  struct Cell {
    std::string model;
    long p, t;
  };
  std::vector<Cell> grid;
  for (const char* name : {"tpp0", "tpp1"})
    for (long p : primes)
      for (long t = 0; t < draws; ++t) grid.push_back({name, p, t});
  return run_cases(static_cast<long>(grid.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    const Cell& cell = grid[static_cast<size_t>(i)];
    long D = ctx.cfg.D >= 0 ? ctx.cfg.D : 2 * cell.p;
    Model m = cell.model == "tpp0" ? build_model("tpp0", Rat(0), Rat(0), Rat(5))
                                   : build_model("tpp1", Rat(2), Rat(3), Rat(5));
    if (cell.t > 0) {
      Rng rng(case_seed(ctx.seed, "frobenius-pole", i));
      RationalModelDraw d = draw_rational_model(rng);
      m = cell.model == "tpp0" ? build_model("tpp0", Rat(0), Rat(0), d.hb)
                               : build_model("tpp1", d.a1, d.a2, d.hb);
    }
    rec.parameters["draw"] = cell.t;
    frobenius_pole_case(m, cell.p, D, rec);
  });
}

// --- check: frobenius-conj ---------------------------------------------------------

std::vector<CaseRecord> run_frobenius_conj(const CheckContext& ctx) {
  std::vector<long> primes = primes_or(ctx, {2});
  require_prime_list(primes, "frobenius-conj");
  Rat a1(2), a2(3), hb(5);
  if (explicit_mode(ctx)) {
    a1 = param_rat(ctx.cfg.params, "a1");
    a2 = param_rat(ctx.cfg.params, "a2");
    hb = param_rat(ctx.cfg.params, "hb");
  }
  return run_cases(static_cast<long>(primes.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    long p = primes[static_cast<size_t>(i)];
    long D = ctx.cfg.D >= 0 ? ctx.cfg.D : 2 * p;
    Model m = build_model("tpp1", a1, a2, hb);
    rec.parameters["model"] = m.name;
    rec.parameters["a1"] = rat_json(a1);
    rec.parameters["a2"] = rat_json(a2);
    rec.parameters["hb"] = rat_json(hb);
    rec.parameters["p"] = p;
    rec.parameters["D"] = D;
    ConjugationData data = conjugation_check(m, p, D);
    rec.data["residual_zero"] = data.zero;
    if (!data.zero) rec.data["first_bad_order"] = data.first_bad_order;
    set_status(rec, data.zero);
  });
}

// --- check: tpp0-closed ---------------------------------------------------------

long first_series_mismatch(const ScalarSeries<CycloNum>& a, const ScalarSeries<CycloNum>& b) {
  long top = std::min(a.D, b.D);
  for (long d = 0; d <= top; ++d)
    if (!(a.c[static_cast<size_t>(d)] == b.c[static_cast<size_t>(d)])) return d;
  return -1;
}

std::vector<CaseRecord> run_tpp0_closed(const CheckContext& ctx) {
  std::vector<long> primes = primes_or(ctx, {2, 3, 5});
  require_prime_list(primes, "tpp0-closed");
  long D = ctx.cfg.D >= 0 ? ctx.cfg.D : 12;
  Rat hb(5);
  if (ctx.cfg.params.contains("hb")) hb = param_rat(ctx.cfg.params, "hb");
  struct Cell {
    long p;
    bool adjusted;
  };
  std::vector<Cell> grid;
  for (long p : primes) grid.push_back({p, false});
  for (long p : primes) grid.push_back({p, true});
  return run_cases(static_cast<long>(grid.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    const Cell& cell = grid[static_cast<size_t>(i)];
    rec.parameters["model"] = "tpp0";
    rec.parameters["hb"] = rat_json(hb);
    rec.parameters["p"] = cell.p;
    rec.parameters["D"] = D;
    rec.parameters["form"] = cell.adjusted ? "adjusted" : "plain";
    ScalarSeries<CycloNum> fred = scalar_intertwiner_at_zeta(hb, cell.p, D);
    ScalarClosedForms forms = tpp0_closed_form(hb, cell.p, D);
    const ScalarSeries<CycloNum>& target = cell.adjusted ? forms.adjusted : forms.plain;
    long mismatch = first_series_mismatch(fred, target);
    rec.data["matches"] = mismatch < 0;
    if (mismatch >= 0) rec.data["first_mismatch_order"] = mismatch;
    if (cell.adjusted) {
      set_status(rec, mismatch < 0);
    } else if (mismatch < 0) {
      rec.status = CaseStatus::kFail;
      rec.data["note"] = "uncorrected product unexpectedly matches the intertwiner";
    } else {
      rec.status = CaseStatus::kFinding;
      rec.data["note"] =
          "uncorrected product differs from the intertwiner starting at order p; "
          "multiplying by ((1-z^p)/(1-hb^p z^p))^((p-1)/(2p)) restores exact agreement "
          "(see the adjusted form)";
    }
  });
}

// --- check: bethe-solve ----------------------------------------------------------

void bethe_k1_case(const Cd& a1, const Cd& a2, const Cd& hbq, const Cd& z, double root_tol, double link_tol,
                   CaseRecord& rec) {
  BetheParams P;
  P.k = 1;
  P.n = 2;
  P.a = {a1, a2};
  P.hb = hbq * hbq;
  P.z = z;
  rec.parameters["family"] = "k1n2";
  rec.parameters["a"] = cplx_list_json(P.a);
  rec.parameters["hb_bethe"] = cplx_json(P.hb);
  rec.parameters["hb_qde"] = cplx_json(hbq);
  rec.parameters["z"] = cplx_json(z);
  std::vector<Cd> roots = bethe_solve_k1(P);
  double worst = 0;
  for (const Cd& r : roots) {
    auto B = bethe_residual(P, {r});
    worst = std::max(worst, std::abs(B[0]));
  }
  ModelImage<Cd> im;
  im.N = 2;
  im.compose_q = true;
  im.a1 = a1;
  im.a2 = a2;
  im.hb = hbq;
  std::vector<Cd> eigs = eig_list(mcal_at(im, z));
  double link = pair_multisets_max_reldist(roots, eigs);
  rec.data["roots"] = cplx_list_json(roots);
  rec.data["max_residual"] = worst;
  rec.data["eigenvalue_distance"] = link;
  set_status(rec, worst <= root_tol && link <= link_tol);
}

void bethe_k2_case(const BetheParams& P, double root_tol, CaseRecord& rec) {
  rec.parameters["family"] = "k2n4";
  rec.parameters["a"] = cplx_list_json(P.a);
  rec.parameters["hb_bethe"] = cplx_json(P.hb);
  rec.parameters["z"] = cplx_json(P.z);
  HomotopyResult res = bethe_solve_homotopy(P, root_tol);
  rec.data["expected_solutions"] = res.expected;
  rec.data["found_solutions"] = static_cast<long>(res.solutions.size());
  rec.data["max_residual"] = res.max_residual;
  rec.data["min_pairwise_distance"] = res.min_pairwise;
  if (!res.note.empty()) rec.data["note"] = res.note;
  set_status(rec, res.complete && static_cast<long>(res.solutions.size()) == res.expected &&
                      res.max_residual <= root_tol && res.min_pairwise > 1e-6);
}

std::vector<CaseRecord> run_bethe_solve(const CheckContext& ctx) {
  double root_tol = tolerance_or(ctx, "residual", 1e-10);
  double link_tol = tolerance_or(ctx, "eigenvalue_link", 1e-10);
  if (explicit_mode(ctx)) {
    long k = param_int(ctx.cfg.params, "k", 1, true);
    long n = param_int(ctx.cfg.params, "n", 2, true);
    if (!ctx.cfg.params.contains("a") || !ctx.cfg.params["a"].is_array() ||
        static_cast<long>(ctx.cfg.params["a"].size()) != n)
      config_fail("bethe-solve explicit mode requires params.a with n entries");
    BetheParams P;
    P.k = k;
    P.n = n;
    for (const auto& e : ctx.cfg.params["a"]) P.a.push_back(param_cplx(e, "a"));
    P.hb = param_cplx(ctx.cfg.params.contains("hb") ? ctx.cfg.params["hb"] : Json(), "hb");
    P.z = ctx.cfg.params.contains("z") ? param_cplx(ctx.cfg.params["z"], "z") : Cd(0, 0);
    return run_cases(1, 1, [&](long, CaseRecord& rec) {
      rec.parameters["family"] = "explicit";
      rec.parameters["k"] = P.k;
      rec.parameters["n"] = P.n;
      rec.parameters["a"] = cplx_list_json(P.a);
      rec.parameters["hb_bethe"] = cplx_json(P.hb);
      rec.parameters["z"] = cplx_json(P.z);
      std::vector<std::vector<Cd>> sols;
      if (P.k == 1) {
        for (const Cd& r : bethe_solve_k1(P)) sols.push_back({r});
      } else {
        HomotopyResult res = bethe_solve_homotopy(P, root_tol);
        sols = res.solutions;
      }
      double worst = 0;
      Json roots = Json::array();
      for (const auto& s : sols) {
        roots.push_back(cplx_list_json(s));
        worst = std::max(worst, detail::residual_norm(bethe_residual(P, s)));
      }
      rec.data["solutions"] = roots;
      rec.data["max_residual"] = worst;
      set_status(rec, worst <= root_tol);
    });
  }
  long draws = draws_or(ctx, 20);
  return run_cases(2 * draws, ctx.jobs, [&](long i, CaseRecord& rec) {
    Rng rng(case_seed(ctx.seed, "bethe-solve", i));
    if (i < draws) {
      rec.parameters["draw"] = i;
      if (i == 0) {
        // z = 0: the Bethe roots are exactly the equivariant parameters.
        Cd a1(1.1, 0.2), a2(1.9, -0.3), hbq(1.3, 0.04);
        bethe_k1_case(a1, a2, hbq, Cd(0, 0), root_tol, link_tol, rec);
        std::vector<Cd> roots;
        for (const auto& r : rec.data["roots"]) roots.push_back(Cd(r[0].get<double>(), r[1].get<double>()));
        double z0dist = pair_multisets_max_reldist(roots, {a1, a2});
        rec.data["z0_parameter_distance"] = z0dist;
        if (z0dist > link_tol) rec.status = CaseStatus::kFail;
      } else {
        NumericModelDraw d = draw_numeric_model(rng);
        bethe_k1_case(d.a1, d.a2, d.hbq, d.z, root_tol, link_tol, rec);
      }
    } else {
      rec.parameters["draw"] = i - draws;
      bethe_k2_case(draw_k2_system(rng), root_tol, rec);
    }
  });
}

// --- check: bethe-frobenius -------------------------------------------------------

void bethe_frobenius_case(const BetheParams& base, long p, double tol, CaseRecord& rec) {
  rec.parameters["a"] = cplx_list_json(base.a);
  rec.parameters["hb_bethe"] = cplx_json(base.hb);
  rec.parameters["z"] = cplx_json(base.z);
  rec.parameters["p"] = p;
  BetheParams powered = base;
  for (auto& a : powered.a) a = cd_pow(a, p);
  powered.hb = cd_pow(base.hb, p);
  powered.z = cd_pow(base.z, p);
  std::vector<Cd> yroots = bethe_solve_k1(powered);

  // mu_p closure of the p-th roots of the powered-parameter roots.
  std::vector<Cd> candidates;
  for (const Cd& y : yroots) {
    Cd x0 = std::pow(y, Cd(1.0 / static_cast<double>(p), 0.0));
    for (long k = 0; k < p; ++k) candidates.push_back(x0 * root_of_unity(p, k));
  }
  double worst = 0;
  for (const Cd& c : candidates) worst = std::max(worst, bethe_powered_residual(base, {c}, p));
  rec.data["max_powered_residual"] = worst;

  // Cleared powered system: prod_j (x^p - a_j^p) - z#' prod_j (a_j^p - hb^p x^p).
  Cd zs = bethe_zsharp(powered);
  std::vector<Cd> c1{Cd(1, 0)}, c2{Cd(1, 0)};
  for (const Cd& ap : powered.a) {
    std::vector<Cd> n1(c1.size() + static_cast<size_t>(p), Cd(0, 0));
    std::vector<Cd> n2(c2.size() + static_cast<size_t>(p), Cd(0, 0));
    for (size_t t = 0; t < c1.size(); ++t) {
      n1[t] += c1[t] * (-ap);
      n1[t + static_cast<size_t>(p)] += c1[t];
    }
    for (size_t t = 0; t < c2.size(); ++t) {
      n2[t] += c2[t] * ap;
      n2[t + static_cast<size_t>(p)] += c2[t] * (-cd_pow(base.hb, p));
    }
    c1 = std::move(n1);
    c2 = std::move(n2);
  }
  std::vector<Cd> poly(c1.size());
  for (size_t t = 0; t < c1.size(); ++t) poly[t] = c1[t] - zs * c2[t];
  std::vector<Cd> powered_roots = poly_roots_companion(poly);
  double set_dist = pair_multisets_max_reldist(powered_roots, candidates);
  rec.data["root_set_distance"] = set_dist;

  // Control: a base root does not solve the powered system.
  std::vector<Cd> base_roots = bethe_solve_k1(base);
  double control = bethe_powered_residual(base, {base_roots[0]}, p);
  rec.data["base_root_powered_residual"] = control;

  bool ok = worst <= tol && set_dist <= tol;
  set_status(rec, ok);
  if (ok && control < 1e-6) {
    rec.status = CaseStatus::kFinding;
    rec.data["note"] = "control: base root nearly solves the powered system for this draw";
  }
}

std::vector<CaseRecord> run_bethe_frobenius(const CheckContext& ctx) {
  double tol = tolerance_or(ctx, "residual", 1e-8);
  std::vector<long> primes = primes_or(ctx, {2});
  require_prime_list(primes, "bethe-frobenius");
  if (explicit_mode(ctx)) {
    BetheParams P;
    P.k = 1;
    P.n = 2;
    if (!ctx.cfg.params.contains("a") || !ctx.cfg.params["a"].is_array() || ctx.cfg.params["a"].size() != 2)
      config_fail("bethe-frobenius explicit mode requires params.a with 2 entries");
    for (const auto& e : ctx.cfg.params["a"]) P.a.push_back(param_cplx(e, "a"));
    P.hb = param_cplx(ctx.cfg.params.contains("hb") ? ctx.cfg.params["hb"] : Json(), "hb");
    P.z = param_cplx(ctx.cfg.params.contains("z") ? ctx.cfg.params["z"] : Json(), "z");
    long p = param_int(ctx.cfg.params, "p", 2);
    return run_cases(1, 1, [&](long, CaseRecord& rec) { bethe_frobenius_case(P, p, tol, rec); });
  }
  long draws = draws_or(ctx, 20);
  std::vector<std::pair<long, long>> grid;
  for (long p : primes)
    for (long t = 0; t < draws; ++t) grid.emplace_back(p, t);
  return run_cases(static_cast<long>(grid.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    auto [p, t] = grid[static_cast<size_t>(i)];
    Rng rng(case_seed(ctx.seed, "bethe-frobenius", i));
    NumericModelDraw d = draw_numeric_model(rng);
    BetheParams P;
    P.k = 1;
    P.n = 2;
    P.a = {d.a1, d.a2};
    P.hb = d.hbq * d.hbq;
    P.z = d.z;
    rec.parameters["draw"] = t;
    bethe_frobenius_case(P, p, tol, rec);
  });
}

// --- check: yangyang-grad ---------------------------------------------------------

std::vector<CaseRecord> run_yangyang_grad(const CheckContext& ctx) {
  if (explicit_mode(ctx)) config_fail("yangyang-grad does not support explicit mode");
  double grad_tol = tolerance_or(ctx, "gradient", 1e-4);
  double control_min = tolerance_or(ctx, "control_min", 1e-2);
  long draws = draws_or(ctx, 10);
  return run_cases(draws, ctx.jobs, [&](long i, CaseRecord& rec) {
    Rng rng(case_seed(ctx.seed, "yangyang-grad", i));
    BetheParams P = draw_k2_system(rng);
    rec.parameters["draw"] = i;
    rec.parameters["a"] = cplx_list_json(P.a);
    rec.parameters["hb_bethe"] = cplx_json(P.hb);
    rec.parameters["z"] = cplx_json(P.z);
    HomotopyResult res = bethe_solve_homotopy(P, 1e-10);
    bool all_ok = res.complete && static_cast<long>(res.solutions.size()) == res.expected;
    double worst = 0;
    std::string error;
    for (const auto& sol : res.solutions) {
      GradientCheck gc = yang_yang_gradient_check(P, sol, 1e-5, grad_tol);
      worst = std::max(worst, gc.max_deviation);
      if (!gc.ok) {
        all_ok = false;
        if (!gc.error.empty()) error = gc.error;
      }
    }
    rec.data["roots_checked"] = static_cast<long>(res.solutions.size());
    rec.data["max_gradient_deviation"] = worst;
    if (!error.empty()) rec.data["error"] = error;
    if (!res.solutions.empty()) {
      std::vector<Cd> bad = res.solutions.front();
      bad[0] *= 1.05;
      GradientCheck gc = yang_yang_gradient_check(P, bad, 1e-5, grad_tol);
      rec.data["perturbed_control_deviation"] = gc.max_deviation;
      all_ok = all_ok && gc.max_deviation > control_min;
    }
    set_status(rec, all_ok);
  });
}

// --- check: vertex-asymptotics ------------------------------------------------------

std::vector<CaseRecord> run_vertex_asymptotics(const CheckContext& ctx) {
  std::vector<long> primes = primes_or(ctx, {2});
  require_prime_list(primes, "vertex-asymptotics");
  double hb = param_double(ctx.cfg.params, "hb", 0.7);
  double z = param_double(ctx.cfg.params, "z", 0.2);
  double tol = tolerance_or(ctx, "relative_error", 2e-2);
  std::vector<double> eps{1e-2, 3e-3, 1e-3};
  return run_cases(static_cast<long>(primes.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    long p = primes[static_cast<size_t>(i)];
    rec.parameters["model"] = "tpp0";
    rec.parameters["hb"] = hb;
    rec.parameters["z"] = z;
    rec.parameters["p"] = p;
    rec.parameters["eps"] = eps;
    AsymptoticsReport rep = scalar_vertex_asymptotics(hb, z, p, eps);
    Json table = Json::array();
    bool ok = true;
    const char* labels[3] = {"near_one", "near_zeta", "near_zeta_powered"};
    for (const char* label : labels) {
      std::vector<double> errs;
      for (const auto& c : rep.cases)
        if (c.label == label) errs.push_back(c.rel_err);
      for (size_t t = 0; t + 1 < errs.size(); ++t)
        if (errs[t + 1] >= errs[t]) ok = false;  // must decrease along the ladder
      if (errs.empty() || errs.back() > tol) ok = false;
      Json row = Json::object();
      row["case"] = label;
      row["relative_errors"] = errs;
      table.push_back(row);
    }
    rec.data["ladder"] = table;
    set_status(rec, ok);
  });
}

// --- check: pcurv-structure / pcurv-log ---------------------------------------------

Mat<RatFun<Fp>> draw_connection(Rng& rng, long N, long p) {
  Mat<RatFun<Fp>> A(N, N, RatFun<Fp>::constant(Fp(0, p)));
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) {
      Poly<Fp> num;
      for (int d = 0; d <= 2; ++d) num.c.push_back(Fp(rng.uniform_int(0, p - 1), p));
      num.trim();
      Poly<Fp> den;
      if (rng.uniform_int(0, 1)) {
        den.c.push_back(Fp(rng.uniform_int(0, p - 1), p));
        den.c.push_back(Fp(1, p));
      } else {
        den.c.push_back(Fp(1, p));
      }
      A(i, j) = RatFun<Fp>(num, den);
    }
  return A;
}

std::string connection_repr(const Mat<RatFun<Fp>>& A) {
  auto poly_repr = [](const Poly<Fp>& q) {
    std::string s = "(";
    for (long d = 0; d <= q.deg(); ++d) {
      s += std::to_string(q.coeff(d).v);
      if (d < q.deg()) s += ",";
    }
    return s + ")";
  };
  std::string s;
  for (long i = 0; i < A.n; ++i)
    for (long j = 0; j < A.m; ++j) {
      s += poly_repr(A(i, j).num) + "/" + poly_repr(A(i, j).den);
      s += (j + 1 < A.m) ? " " : (i + 1 < A.n ? "; " : "");
    }
  return s;
}

struct PcurvGrid {
  std::vector<std::tuple<long, long, long>> cells;  // (p, N, draw)
  bool from_file = false;
  Mat<RatFun<Rat>> file_matrix = Mat<RatFun<Rat>>(1, 1, RatFun<Rat>::constant(Rat(0)));
};

PcurvGrid pcurv_grid(const CheckContext& ctx, const std::string& check) {
  PcurvGrid grid;
  std::vector<long> primes = primes_or(ctx, {2, 3, 5, 7});
  require_prime_list(primes, check);
  if (!ctx.cfg.matrix_file.empty() || explicit_mode(ctx)) {
    if (ctx.cfg.matrix_file.empty()) config_fail(check + " explicit mode requires 'matrix_file'");
    grid.from_file = true;
    try {
      grid.file_matrix = parse_matrix_file(ctx.cfg.matrix_file);
    } catch (const std::exception& e) {
      config_fail(std::string("matrix_file: ") + e.what());
    }
    if (grid.file_matrix.n != grid.file_matrix.m) config_fail("matrix file must contain a square matrix");
    for (long p : primes) grid.cells.emplace_back(p, grid.file_matrix.n, 0);
    return grid;
  }
  long draws = draws_or(ctx, 20);
  for (long p : primes)
    for (long N : {2L, 3L})
      for (long t = 0; t < draws; ++t) grid.cells.emplace_back(p, N, t);
  return grid;
}

std::vector<CaseRecord> run_pcurv_generic(const CheckContext& ctx, const std::string& check, bool log_identity) {
  PcurvGrid grid = pcurv_grid(ctx, check);
  return run_cases(static_cast<long>(grid.cells.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    auto [p, N, t] = grid.cells[static_cast<size_t>(i)];
    rec.parameters["p"] = p;
    rec.parameters["N"] = N;
    Mat<RatFun<Fp>> A(N, N, RatFun<Fp>::constant(Fp(0, p)));
    if (grid.from_file) {
      rec.parameters["matrix_file"] = ctx.cfg.matrix_file;
      A = reduce_matrix_mod_p(grid.file_matrix, p);
    } else {
      Rng rng(case_seed(ctx.seed, check, i));
      A = draw_connection(rng, N, p);
      rec.parameters["draw"] = t;
      rec.parameters["connection"] = connection_repr(A);
    }
    if (log_identity) {
      LogIdentityReport rep = log_identity_check(A, p);
      rec.data["identity_holds"] = rep.ok;
      if (!rep.ok) {
        rec.data["first_bad_order"] = rep.order;
        rec.data["entry"] = Json::array({rep.row, rep.col});
      }
      set_status(rec, rep.ok);
    } else {
      PCurvature<Fp> cp = p_curvature(A, p);  // throws on structure failure
      rec.data["structure_holds"] = true;
      rec.data["orders"] = static_cast<long>(cp.orders.size()) - 1;
      set_status(rec, true);
    }
  });
}

std::vector<CaseRecord> run_pcurv_structure(const CheckContext& ctx) {
  return run_pcurv_generic(ctx, "pcurv-structure", false);
}

std::vector<CaseRecord> run_pcurv_log(const CheckContext& ctx) {
  return run_pcurv_generic(ctx, "pcurv-log", true);
}

// --- check: stirling ---------------------------------------------------------------

std::vector<CaseRecord> run_stirling(const CheckContext& ctx) {
  std::vector<long> primes = primes_or(ctx, {2, 3, 5, 7, 11, 13, 17, 19, 23});
  require_prime_list(primes, "stirling");
  return run_cases(static_cast<long>(primes.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    long p = primes[static_cast<size_t>(i)];
    rec.parameters["p"] = p;
    StirlingReport rep = stirling_row_check(p);
    Json row = Json::array();
    for (const Int& v : rep.row) row.push_back(v.get_str());
    rec.data["row"] = row;
    rec.data["interior_divisible"] = rep.ok;
    set_status(rec, rep.ok);
  });
}

// --- check: pi-lemma ---------------------------------------------------------------

std::vector<CaseRecord> run_pi_lemma(const CheckContext& ctx) {
  if (explicit_mode(ctx)) config_fail("pi-lemma does not support explicit mode");
  std::vector<long> primes = primes_or(ctx, {3, 5});
  require_prime_list(primes, "pi-lemma");
  for (long p : primes)
    if (p < 3) config_fail("pi-lemma requires odd primes");
  long draws = draws_or(ctx, 20);
  std::vector<std::pair<long, long>> grid;
  for (long p : primes)
    for (long t = 0; t < draws; ++t) grid.emplace_back(p, t);
  return run_cases(static_cast<long>(grid.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    auto [p, t] = grid[static_cast<size_t>(i)];
    Rng rng(case_seed(ctx.seed, "pi-lemma", i));
    long N = 2 + rng.uniform_int(0, 1);
    Mat<Rat> alpha = Mat<Rat>::zero(N, N, Rat(1)), beta = alpha;
    Json arep = Json::array(), brep = Json::array();
    for (long r = 0; r < N; ++r)
      for (long c = 0; c < N; ++c) {
        alpha(r, c) = Rat(rng.uniform_int(-5, 5));
        beta(r, c) = Rat(rng.uniform_int(-5, 5));
        arep.push_back(static_cast<long>(alpha(r, c).get_num().get_si()));
        brep.push_back(static_cast<long>(beta(r, c).get_num().get_si()));
      }
    rec.parameters["p"] = p;
    rec.parameters["N"] = N;
    rec.parameters["draw"] = t;
    rec.parameters["alpha"] = arep;
    rec.parameters["beta"] = brep;
    PiLemmaReport rep = pi_lemma_check(p, alpha, beta);
    rec.data["valuation"] = rep.valuation == kValuationInfinity ? Json("infinity") : Json(rep.valuation);
    rec.data["required"] = rep.required;
    set_status(rec, rep.ok);
  });
}

// --- check: pencil-spectrum ----------------------------------------------------------

std::vector<CaseRecord> run_pencil_spectrum(const CheckContext& ctx) {
  std::vector<long> primes = primes_or(ctx, {2, 3, 5});
  require_prime_list(primes, "pencil-spectrum");
  struct Cell {
    long p, u1, u2, h;
  };
  std::vector<Cell> grid;
  if (explicit_mode(ctx)) {
    long u1 = param_int(ctx.cfg.params, "u1", 0, true);
    long u2 = param_int(ctx.cfg.params, "u2", 0, true);
    long h = param_int(ctx.cfg.params, "h", 0, true);
    for (long p : primes) grid.push_back({p, u1, u2, h});
  } else {
    for (long p : primes) {
      if (p <= 3) {
        for (long u1 = 0; u1 < p; ++u1)
          for (long u2 = 0; u2 < p; ++u2) {
            if (u1 == u2) continue;
            for (long h = 1; h < p; ++h) grid.push_back({p, u1, u2, h});
          }
      } else {
        long draws = draws_or(ctx, 20);
        Rng rng(case_seed(ctx.seed, "pencil-spectrum", p));
        for (long t = 0; t < draws; ++t) {
          long u1 = rng.uniform_int(0, p - 1), u2 = u1;
          while (u2 == u1) u2 = rng.uniform_int(0, p - 1);
          grid.push_back({p, u1, u2, rng.uniform_int(1, p - 1)});
        }
      }
    }
  }
  return run_cases(static_cast<long>(grid.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    const Cell& c = grid[static_cast<size_t>(i)];
    rec.parameters["p"] = c.p;
    rec.parameters["u1"] = c.u1;
    rec.parameters["u2"] = c.u2;
    rec.parameters["h"] = c.h;
    PencilSpectrumReport rep = pencil_spectrum_check(c.p, c.u1, c.u2, c.h);
    rec.data["trace_equal"] = rep.trace_ok;
    rec.data["charpoly_equal"] = rep.ok;
    set_status(rec, rep.ok);
  });
}

// --- check: root-reduction -----------------------------------------------------------

std::vector<CaseRecord> run_root_reduction(const CheckContext& ctx) {
  std::vector<long> primes = primes_or(ctx, {2, 3});
  for (long p : primes)
    if (p != 2 && p != 3) config_fail("root-reduction supports p in {2, 3} only");
  struct Cell {
    long p, u1, u2, h, Dz;
  };
  std::vector<Cell> grid;
  auto default_dz = [&](long p) { return ctx.cfg.D_z >= 0 ? ctx.cfg.D_z : p; };
  for (long p : primes) {
    long Dz = default_dz(p);
    if (Dz > 3) config_fail("root-reduction is cost-bounded to D_z <= 3");
    if (explicit_mode(ctx)) {
      grid.push_back({p, param_int(ctx.cfg.params, "u1", 0, true), param_int(ctx.cfg.params, "u2", 0, true),
                      param_int(ctx.cfg.params, "h", 0, true), Dz});
    } else {
      grid.push_back({p, p == 2 ? 0 : 1, p == 2 ? 1 : 2, 1, Dz});
      long extra = draws_or(ctx, 0);
      Rng rng(case_seed(ctx.seed, "root-reduction", p));
      for (long t = 0; t < extra; ++t) {
        long u1 = rng.uniform_int(0, p - 1), u2 = u1;
        while (u2 == u1) u2 = rng.uniform_int(0, p - 1);
        grid.push_back({p, u1, u2, rng.uniform_int(1, p - 1), Dz});
      }
    }
  }
  return run_cases(static_cast<long>(grid.size()), ctx.jobs, [&](long i, CaseRecord& rec) {
    const Cell& c = grid[static_cast<size_t>(i)];
    rec.parameters["p"] = c.p;
    rec.parameters["u1"] = c.u1;
    rec.parameters["u2"] = c.u2;
    rec.parameters["h"] = c.h;
    rec.parameters["D_z"] = c.Dz;
    RootReductionReport rep = root_reduction_check(c.p, c.u1, c.u2, c.h, c.Dz);
    rec.data["digits_agree"] = rep.ok;
    rec.data["extraction_ok"] = rep.extraction_ok;
    rec.data["powered_vanishing_ok"] = rep.powered_vanishing_ok;
    if (rep.first_mismatch_order >= 0) rec.data["first_mismatch_order"] = rep.first_mismatch_order;
    if (rep.charpoly_fallback_ran) rec.data["charpoly_fallback_equal"] = rep.charpoly_fallback_ok;
    if (!rep.note.empty()) rec.data["note"] = rep.note;
    if (c.p == 2)
      rec.data["reference_note"] =
          "for p = 2 the doubled-h reference vanishes identically mod 2, so agreement "
          "asserts the product is trivial past lambda-order p";
    if (rep.ok && rep.extraction_ok && rep.powered_vanishing_ok) {
      rec.status = CaseStatus::kPass;
    } else {
      // Exploratory check: disagreement is a documented finding, never silent.
      rec.status = CaseStatus::kFinding;
      if (!rec.data.contains("note"))
        rec.data["note"] = "digit disagreement under the fixed first-order lift; see charpoly fallback";
    }
  });
}

// --- check: coh-limit ----------------------------------------------------------------

std::vector<CaseRecord> run_coh_limit(const CheckContext& ctx) {
  if (explicit_mode(ctx)) config_fail("coh-limit has no explicit parameters");
  return run_cases(1, 1, [&](long, CaseRecord& rec) {
    Mat<RatFun<CohK3>> C = cohomological_limit();
    bool match_2h = C == cohomological_reference(2);
    bool match_h = C == cohomological_reference(1);
    rec.parameters["lift"] = "a_i = 1 + eps u_i, hb = 1 + eps h, q = 1 + eps";
    rec.data["matches_h"] = match_h;
    rec.data["matches_2h"] = match_2h;
    bool exactly_one = match_2h != match_h;
    if (exactly_one) rec.data["convention"] = match_2h ? "2h" : "h";
    set_status(rec, exactly_one);
  });
}

// --- catalog ----------------------------------------------------------------------

using CaseRunner = std::vector<CaseRecord> (*)(const CheckContext&);

struct CheckEntry {
  CheckDef def;
  CaseRunner cases;
};

CheckResult run_entry(const CheckContext& ctx);

const std::vector<CheckEntry>& entries() {
  static const std::vector<CheckEntry> table = {
      {{"qde-char", "qde", {"Qchaareq", "Qchaareqp"}, "<30s",
        "characteristic identity of the p-fold shift product, exact over Q(zeta_p)(z)", &run_entry},
       &run_qde_char},
      {{"qde-spectrum", "qde", {"specthmintro"}, "<10s",
        "eigenvalues of the iterated product at zeta_p match Bethe roots at powered parameters", &run_entry},
       &run_qde_spectrum},
      {{"frobenius-pole", "frobenius", {"ratthm"}, "<5min",
        "intertwiner series is regular at q = zeta_p; uncompensated solutions are not", &run_entry},
       &run_frobenius_pole},
      {{"frobenius-conj", "frobenius", {"conjintro", "QDEiter"}, "<5min",
        "intertwiner conjugates the powered one-argument matrix into the shift product", &run_entry},
       &run_frobenius_conj},
      {{"tpp0-closed", "frobenius", {"Fdef", "sec4.3"}, "<1min",
        "scalar intertwiner versus the coprime-order product form, plain and adjusted", &run_entry},
       &run_tpp0_closed},
      {{"bethe-solve", "bethe", {"sl2spin", "betheeqintro"}, "<30s",
        "Bethe root finding: quadratic case with eigenvalue linkage, homotopy for k=2, n=4", &run_entry},
       &run_bethe_solve},
      {{"bethe-frobenius", "bethe", {"pbethe", "frobbeth"}, "<5s",
        "powered-system root set is the mu_p closure of p-th roots at powered parameters", &run_entry},
       &run_bethe_frobenius},
      {{"yangyang-grad", "vertex", {"betheqprop", "YangYang"}, "<30s",
        "exponentiated Yang-Yang gradient vanishes on the 2 pi i lattice at accepted roots", &run_entry},
       &run_yangyang_grad},
      {{"vertex-asymptotics", "vertex", {"propasymp", "corrqsq", "corrroot"}, "<5s",
        "scalar solution asymptotics near 1 and near zeta_p against dilogarithm targets", &run_entry},
       &run_vertex_asymptotics},
      {{"pcurv-structure", "pcurvature", {"Cpdef"}, "<2min",
        "(d + sA)^p has no intermediate derivative orders and identity at the top", &run_entry},
       &run_pcurv_structure},
      {{"pcurv-log", "pcurvature", {"lem2"}, "<2min",
        "(zd + szA)^p - (zd + szA) equals z^p (d + sA)^p order by order", &run_entry},
       &run_pcurv_log},
      {{"stirling", "pcurvature", {"sec5.3"}, "<1s",
        "row p of the (zd)^n expansion reduces to (1, 0, ..., 0, 1) mod p", &run_entry},
       &run_stirling},
      {{"pi-lemma", "pcurvature", {"lem1"}, "<30s",
        "(1 + pi a + pi^2 b)^p - (1 + pi^p(a^p - a)) has pi-valuation at least p+1", &run_entry},
       &run_pi_lemma},
      {{"pencil-spectrum", "pcurvature", {"EVpencil"}, "<5min",
        "characteristic polynomials of z^p C_p(d + sA) and (s^p - s) z^p A(z^p) agree", &run_entry},
       &run_pencil_spectrum},
      {{"root-reduction", "pcurvature", {"lefteq", "eqright", "itprodDef"}, "<5min",
        "lambda-digit of the iterated product at zeta_p against the pencil p-curvature (exploratory)",
        &run_entry},
       &run_root_reduction},
      {{"coh-limit", "qde", {"specpar", "Connections"}, "<1s",
        "first-order expansion of the shift matrix matches the reference connection shape", &run_entry},
       &run_coh_limit},
  };
  return table;
}

const CheckEntry* find_entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.def.name == name) return &e;
  return nullptr;
}

std::string aggregate_status(const std::vector<CaseRecord>& cases) {
  bool fail = false, finding = false;
  for (const auto& c : cases) {
    if (c.status == CaseStatus::kFail) fail = true;
    if (c.status == CaseStatus::kFinding) finding = true;
  }
  return fail ? "fail" : (finding ? "finding" : "pass");
}

CheckResult run_entry(const CheckContext& ctx) {
  const CheckEntry* entry = find_entry(ctx.cfg.check);
  if (!entry) config_fail("unknown check '" + ctx.cfg.check + "'");
  CheckResult result;
  result.check = entry->def.name;
  result.module = entry->def.module;
  result.tags = entry->def.tags;
  auto t0 = std::chrono::steady_clock::now();
  result.cases = entry->cases(ctx);
  result.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  result.status = aggregate_status(result.cases);
  return result;
}

}  // namespace

const std::vector<CheckDef>& check_catalog() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> out;
    for (const auto& e : entries()) out.push_back(e.def);
    return out;
  }();
  return defs;
}

const CheckDef* find_check(const std::string& name) {
  for (const auto& d : check_catalog())
    if (d.name == name) return &d;
  return nullptr;
}

Json catalog_json() {
  Json out = Json::array();
  for (const auto& d : check_catalog()) {
    Json e = Json::object();
    e["check"] = d.name;
    e["module"] = d.module;
    e["tags"] = d.tags;
    e["default_budget"] = d.budget;
    e["summary"] = d.summary;
    out.push_back(e);
  }
  return out;
}

Json convention_flags() {
  Json j = Json::object();
  j["q_restoration"] = "M(z, q) = Mcal(z q)";
  j["hbar_identification"] = "hb_bethe = hb_qde^2";
  j["h_scale"] = "2h";
  j["zsharp_branch"] = "principal square root, sign +1";
  j["product_order"] = "ascending for spectrum and digit checks; descending conjugates the intertwiner";
  j["frobenius_substitution"] = "inner solution at q^(p^2)";
  j["uniformizer"] = "lambda = zeta_p - 1";
  return j;
}

CheckResult run_check(const CheckContext& ctx) { return run_entry(ctx); }

RunReport run_all(const RunConfig& cfg) {
  RunReport report;
  report.seed = cfg.seed;
  report.conventions = convention_flags();
  for (const auto& check_cfg : cfg.checks) {
    CheckContext ctx;
    ctx.cfg = check_cfg;
    ctx.seed = check_cfg.seed_set ? check_cfg.seed : cfg.seed;
    ctx.jobs = cfg.jobs;
    CheckResult result = run_check(ctx);
    if (result.status == "fail")
      ++report.failures;
    else if (result.status == "finding")
      ++report.findings;
    else
      ++report.passes;
    if (!check_cfg.out.empty()) write_json_file(check_cfg.out, to_json(result));
    report.checks.push_back(std::move(result));
  }
  report.status = report.failures > 0 ? "fail" : "pass";
  return report;
}

}  // namespace qk

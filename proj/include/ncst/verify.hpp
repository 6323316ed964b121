// Verification suites: closed-form limits and structural properties checked
// numerically. Each suite returns named checks with expected and computed
// numbers so reports are machine-readable.
#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ncst/core.hpp"
#include "ncst/geometry.hpp"
#include "ncst/integrate.hpp"
#include "ncst/state.hpp"
#include "ncst/testfn.hpp"
#include "ncst/weyl.hpp"

namespace ncst::verify {

struct Check {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

struct Options {
  QuadratureConfig quad{};
  std::uint64_t seed = 20240601;
};

inline Check abs_check(std::string name, double expected, double computed, double tol) {
  return {std::move(name), expected, computed, tol, std::abs(computed - expected) <= tol};
}

inline Check rel_check(std::string name, double expected, double computed, double rel) {
  const double tol = rel * std::abs(expected);
  return {std::move(name), expected, computed, tol, std::abs(computed - expected) <= tol};
}

/// computed <= bound.
inline Check bound_check(std::string name, double bound, double computed) {
  return {std::move(name), bound, computed, 0.0, computed <= bound};
}

inline Check bool_check(std::string name, bool ok) { return {std::move(name), 1.0, ok ? 1.0 : 0.0, 0.0, ok}; }

inline constexpr double kOneMinusGamma = 1.0 - std::numbers::egamma;

namespace detail {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline SpacetimePoint random_point(std::mt19937_64& rng, double box) {
  SpacetimePoint p;
  for (std::size_t m = 0; m < 4; ++m) p[m] = uniform(rng, -box, box);
  return p;
}

inline FourCovector random_covector(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  return {{nd(rng), nd(rng), nd(rng), nd(rng)}};
}

/// 1-2 narrow, nearby bumps with Gaussian covectors.
inline VectorSmearing random_smearing(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(1, 2)(rng);
  std::vector<SmearingTerm> terms;
  for (int i = 0; i < n; ++i)
    terms.push_back({random_covector(rng), GaussianBump(random_point(rng, 1.0), log_uniform(rng, 2.0, 20.0)), 1.0});
  return VectorSmearing(std::move(terms));
}

/// Smearings with dyadic covectors over a shared bump pool, so sums of
/// smearings are exact and canonical forms compare bit-for-bit.
inline VectorSmearing random_dyadic_smearing(std::mt19937_64& rng, const std::vector<GaussianBump>& pool) {
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  std::uniform_int_distribution<int> comp(-8, 8);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<SmearingTerm> terms;
  for (int i = 0; i < n; ++i) {
    FourCovector v{{comp(rng) / 4.0, comp(rng) / 4.0, comp(rng) / 4.0, comp(rng) / 4.0}};
    terms.push_back({v, pool[pick(rng)], 1.0});
  }
  return VectorSmearing(std::move(terms));
}

inline std::vector<GaussianBump> bump_pool(std::mt19937_64& rng, std::size_t n) {
  std::vector<GaussianBump> pool;
  for (std::size_t i = 0; i < n; ++i) pool.emplace_back(random_point(rng, 1.0), log_uniform(rng, 2.0, 20.0));
  return pool;
}

inline VectorSmearing scalar_bump_difference(const GaussianBump& p, const GaussianBump& q) {
  const FourCovector e0{{1.0, 0.0, 0.0, 0.0}};
  return VectorSmearing({{e0, p, 1.0}, {e0, q, -1.0}});
}

/// A moderate state for the positivity suites: kappa^2 = 16 pi (0.2)^2.
inline DMStateParams moderate_state() {
  DMStateParams s;
  s.state_alpha = 0.1;
  s.constants = PhysicalConstants(0.2);
  return s;
}

}  // namespace detail

/// Small-support limit of the log quadratic form for f = chi_p - chi_q with
/// (p - q)^2 = 1. Checks the stated constant 4(1 - gamma) and the value
/// 2(1 - gamma) obtained by exact evaluation of the Gaussian integrals.
inline SuiteReport minvar(const Options& opt) {
  detail::Timer timer;
  SuiteReport rep{"minvar", {}, 0.0};
  Integrator integ(opt.quad);
  const SpacetimePoint p{{0.0, 1.0, 0.0, 0.0}}, q{};
  const double stated = 4.0 * kOneMinusGamma;
  const double exact = 2.0 * kOneMinusGamma;
  for (double a : {1e2, 1e3, 1e4}) {
    const GaussianBump bp(p, a), bq(q, a);
    const ScalarSmearing h = scalar_difference(bp, bq);
    const QuadratureResult s = integ.scalar_form(KernelKind::LogAbs, h, h);
    const std::string tag = "a=" + std::to_string(static_cast<long>(a));
    if (a == 1e4)
      rep.checks.push_back(rel_check("stated_limit_4(1-gamma)/" + tag, -2.0 * std::log(a) + stated, s.value, 0.02));
    // Finite-width corrections are O(1/a).
    rep.checks.push_back(abs_check("exact_limit_2(1-gamma)/" + tag, -2.0 * std::log(a) + exact, s.value,
                                   10.0 / a + 3.0 * s.error));
    const Estimate lm = log_minus_scalar(h, h, integ);
    rep.checks.push_back(abs_check("clipping_irrelevant/" + tag, s.value, lm.value, 2.0 * s.error + 1e-12));
  }
  // Coincident bumps: E ln|y^2| for y ~ N(0, s^2 I_4) is ln s^2 + 1 - gamma.
  const GaussianBump b0(q, 7.0);
  const QuadratureResult self = integ.pair(KernelKind::LogAbs, b0, b0);
  rep.checks.push_back(abs_check("coincident_pair", std::log(1.0 / 7.0) + kOneMinusGamma, self.value,
                                 std::max(1e-6, 2.0 * self.error)));
  rep.seconds = timer.seconds();
  rep.checks.push_back(bound_check("runtime_seconds", 60.0, rep.seconds));
  return rep;
}

struct FourierCase {
  GaussianBump p, q;
};

inline std::vector<FourierCase> fourier_cases() {
  auto pt = [](double t, double x, double y, double z) { return SpacetimePoint{{t, x, y, z}}; };
  return {
      // timelike centre separations
      {GaussianBump(pt(0, 0, 0, 0), 2.0), GaussianBump(pt(1.5, 0.5, 0, 0), 3.0)},
      {GaussianBump(pt(1, 0, 0, 0), 1.0), GaussianBump(pt(0, 0, 0, 0), 1.0)},
      {GaussianBump(pt(0, 0, 0, 0), 10.0), GaussianBump(pt(2.0, 0, 1.0, 0.5), 4.0)},
      // spacelike
      {GaussianBump(pt(0, 1, 0, 0), 1.0), GaussianBump(pt(0, 0, 0, 0), 1.0)},
      {GaussianBump(pt(0.5, 2, 0, 0), 3.0), GaussianBump(pt(0, 0, 0, 0), 3.0)},
      {GaussianBump(pt(0.2, 0, 0, 1.5), 5.0), GaussianBump(pt(0, 0.3, 0, 0), 2.0)},
  };
}

/// Momentum-space form with F_{-+} against -(1/16 pi^2) times the position-space log form.
inline SuiteReport fourier(const Options& opt) {
  detail::Timer timer;
  SuiteReport rep{"fourier", {}, 0.0};
  Integrator integ(opt.quad);
  const Mat4 id = identity_matrix();
  const double pref = -1.0 / (16.0 * std::numbers::pi * std::numbers::pi);
  int idx = 0;
  for (const auto& c : fourier_cases()) {
    const VectorSmearing f = detail::scalar_bump_difference(c.p, c.q);
    const QuadratureResult pos = integ.bilinear_form(KernelKind::LogAbs, f, f, id);
    const ComplexResult mom = momentum_form(f, f, id, opt.quad);
    const double expected = pref * pos.value;
    const double err = std::abs(pref) * pos.error + mom.error;
    const double tol = std::max(0.01 * std::abs(expected), err);
    const std::string kind = minkowski_interval(c.p.center, c.q.center) < 0.0 ? "timelike" : "spacelike";
    rep.checks.push_back(abs_check("case" + std::to_string(idx++) + "/" + kind, expected, mom.value.real(), tol));
  }
  rep.seconds = timer.seconds();
  rep.checks.push_back(bound_check("runtime_seconds", 120.0, rep.seconds));
  return rep;
}

/// Gram matrices N, M of random families, and omega(a* a) for random elements.
inline SuiteReport gram(const Options& opt) {
  detail::Timer timer;
  SuiteReport rep{"gram", {}, 0.0};
  Integrator integ(opt.quad);
  std::mt19937_64 rng(opt.seed);
  const DMStateParams params = detail::moderate_state();

  double worst_n = 1e300, worst_m = 1e300;  // min eigenvalue / norm
  int n_fail = 0, m_fail = 0;
  for (int fam = 0; fam < 50; ++fam) {
    const int size = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<VectorSmearing> family;
    for (int i = 0; i < size; ++i) family.push_back(detail::random_smearing(rng));
    const GramCheck g = gram_check(family, params, integ);
    worst_n = std::min(worst_n, g.n.min_eigenvalue / std::max(g.n.spectral_norm, 1e-300));
    worst_m = std::min(worst_m, g.m.min_eigenvalue / std::max(g.m.spectral_norm, 1e-300));
    n_fail += !g.n.is_psd;
    m_fail += !g.m.is_psd;
  }
  rep.checks.push_back({"N_min_eig_over_norm", -kPsdRelTol, worst_n, 0.0, n_fail == 0});
  rep.checks.push_back({"M_min_eig_over_norm", -kPsdRelTol, worst_m, 0.0, m_fail == 0});

  WeylAlgebra alg(integ, params.constants, Pairing::Krein, params.u);
  std::normal_distribution<double> nd;
  double worst_re = 1e300, worst_im = 0.0;
  bool ok_re = true, ok_im = true, suspect = false;
  for (int e = 0; e < 100; ++e) {
    WeylElement a;
    for (int k = 0; k < 4; ++k) a += WeylElement::generator(detail::random_smearing(rng), {nd(rng), nd(rng)});
    const FunctionalValue w = eval_omega(alg.mul(weyl_star(a), a), params, integ);
    const double tol = 1e-9 + 2.0 * w.error;
    worst_re = std::min(worst_re, w.value.real());
    worst_im = std::max(worst_im, std::abs(w.value.imag()));
    ok_re = ok_re && w.value.real() >= -tol;
    ok_im = ok_im && std::abs(w.value.imag()) <= tol + 1e-9 * std::abs(w.value);
    suspect = suspect || w.suspect;
  }
  rep.checks.push_back({"omega_a*a_min_real", 0.0, worst_re, 0.0, ok_re});
  rep.checks.push_back({"omega_a*a_max_abs_imag", 0.0, worst_im, 0.0, ok_im});
  rep.checks.push_back(bool_check("mu2_diagonals_within_budget", !suspect));
  rep.seconds = timer.seconds();
  return rep;
}

/// Exact algebra (J^2, star) and quadrature-level identities (cocycle, sigma).
inline SuiteReport weyl(const Options& opt) {
  detail::Timer timer;
  SuiteReport rep{"weyl", {}, 0.0};
  Integrator integ(opt.quad);
  std::mt19937_64 rng(opt.seed + 1);
  const PhysicalConstants k{};
  const FourVector u{{1.0, 0.0, 0.0, 0.0}};

  bool j2 = true, star2 = true;
  std::normal_distribution<double> nd;
  for (int i = 0; i < 100; ++i) {
    const VectorSmearing f = detail::random_smearing(rng);
    j2 = j2 && krein_J(krein_J(f, u), u) == f;
    WeylElement a;
    for (int t = 0; t < 3; ++t) a += WeylElement::generator(detail::random_smearing(rng), {nd(rng), nd(rng)});
    star2 = star2 && weyl_star(weyl_star(a)) == a;
  }
  rep.checks.push_back(bool_check("J_squared_identity_exact", j2));
  rep.checks.push_back(bool_check("star_involution_exact", star2));
  rep.checks.push_back(bool_check("star_unit_is_unit", weyl_star(WeylElement::unit()) == WeylElement::unit()));

  const auto pool = detail::bump_pool(rng, 6);
  WeylAlgebra alg(integ, k, Pairing::Standard);
  double worst_excess = -1e300;
  bool cocycle = true;
  for (int i = 0; i < 50; ++i) {
    const auto f = detail::random_dyadic_smearing(rng, pool);
    const auto g = detail::random_dyadic_smearing(rng, pool);
    const auto h = detail::random_dyadic_smearing(rng, pool);
    const auto wf = WeylElement::generator(f), wg = WeylElement::generator(g), wh = WeylElement::generator(h);
    const WeylElement lhs = alg.mul(alg.mul(wf, wg), wh);
    const WeylElement rhs = alg.mul(wf, alg.mul(wg, wh));
    if (lhs.size() != 1 || rhs.size() != 1 || !(lhs.terms().begin()->first == rhs.terms().begin()->first)) {
      cocycle = false;
      continue;
    }
    const WeylCoef& cl = lhs.terms().begin()->second;
    const WeylCoef& cr = rhs.terms().begin()->second;
    const double dphase = std::abs(std::arg(cl.value / cr.value));
    const double budget = cl.phase_error + cr.phase_error + 1e-12;
    worst_excess = std::max(worst_excess, dphase - budget);
    cocycle = cocycle && dphase <= budget;
  }
  rep.checks.push_back({"cocycle_phase_excess", 0.0, worst_excess, 0.0, cocycle});

  bool anti = true, krein_zero = true;
  double worst_anti = 0.0, worst_kz = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = detail::random_smearing(rng);
    const auto g = detail::random_smearing(rng);
    const Estimate a = sigma(f, g, k, integ), b = sigma(g, f, k, integ);
    worst_anti = std::max(worst_anti, std::abs(a.value + b.value));
    anti = anti && std::abs(a.value + b.value) <= 2.0 * (a.error + b.error) + 1e-15;
    const Estimate z = sigma(f, krein_J(f, u), k, integ);
    worst_kz = std::max(worst_kz, std::abs(z.value));
    krein_zero = krein_zero && std::abs(z.value) <= 2.0 * z.error + 1e-15;
  }
  rep.checks.push_back({"sigma_antisymmetry_max", 0.0, worst_anti, 0.0, anti});
  rep.checks.push_back({"sigma_f_Jf_max", 0.0, worst_kz, 0.0, krein_zero});
  rep.seconds = timer.seconds();
  return rep;
}

/// D_{alpha,psi} -> D as alpha -> inf, independent of psi.
inline SuiteReport alpha_limit(const Options& opt) {
  detail::Timer timer;
  SuiteReport rep{"alpha-limit", {}, 0.0};
  Integrator integ(opt.quad);
  const GaussianBump p(SpacetimePoint{{1.0, 0.4, 0.0, 0.0}}, 50.0), q(SpacetimePoint{}, 50.0);
  DMStateParams s1;
  DMStateParams s2;
  s2.psi = GaussianBump(SpacetimePoint{{0.5, -1.0, 0.3, 0.0}}, 3.0);
  const DistanceBreakdown d = distance(p, q, s1.constants, integ);
  const double scale = std::abs(d.total);

  s1.state_alpha = s2.state_alpha = 1e6;
  const DistanceBreakdown d1 = distance_alpha(p, q, s1, integ);
  const DistanceBreakdown d2 = distance_alpha(p, q, s2, integ);
  rep.checks.push_back(abs_check("alpha=1e6_vs_limit", d.total, d1.total, 1e-3 * scale));
  rep.checks.push_back(abs_check("psi_independence_alpha=1e6", d1.total, d2.total, 1e-3 * scale));

  double prev = 1e300;
  bool monotone = true;
  for (double alpha : {1e2, 1e4, 1e6}) {
    s2.state_alpha = alpha;
    const double gap = std::abs(distance_alpha(p, q, s2, integ).total - d.total);
    monotone = monotone && gap <= prev;
    prev = gap;
  }
  rep.checks.push_back(bool_check("monotone_convergence_alpha_1e2_1e4_1e6", monotone));
  rep.seconds = timer.seconds();
  return rep;
}

/// |C| <= 1, sharp-localization values and antisymmetry.
inline SuiteReport causal_suite(const Options& opt) {
  detail::Timer timer;
  SuiteReport rep{"causal", {}, 0.0};
  Integrator integ(opt.quad);
  std::mt19937_64 rng(opt.seed + 2);
  double worst_excess = -1e300, worst_anti = 0.0;
  bool bound = true, anti = true;
  for (int i = 0; i < 1000; ++i) {
    const GaussianBump p(detail::random_point(rng, 2.0), detail::log_uniform(rng, 0.5, 1e3));
    const GaussianBump q(detail::random_point(rng, 2.0), detail::log_uniform(rng, 0.5, 1e3));
    const Estimate c = causal(p, q, integ);
    const Estimate r = causal(q, p, integ);
    worst_excess = std::max(worst_excess, std::abs(c.value) - 1.0 - 2.0 * c.error);
    bound = bound && std::abs(c.value) <= 1.0 + 2.0 * c.error;
    worst_anti = std::max(worst_anti, std::abs(c.value + r.value));
    anti = anti && std::abs(c.value + r.value) <= c.error + r.error + 1e-15;
  }
  rep.checks.push_back({"bound_excess_over_1000_pairs", 0.0, worst_excess, 0.0, bound});
  rep.checks.push_back({"antisymmetry_max", 0.0, worst_anti, 0.0, anti});

  const double a = 1e4;
  auto sharp = [&](const std::string& name, SpacetimePoint p, double expected) {
    const Estimate c = causal(GaussianBump(p, a), GaussianBump(SpacetimePoint{}, a), integ);
    rep.checks.push_back(abs_check(name, expected, c.value, 1e-3));
  };
  sharp("future_timelike", SpacetimePoint{{1.0, 0.0, 0.0, 0.0}}, 1.0);
  sharp("past_timelike", SpacetimePoint{{-1.0, 0.3, 0.0, 0.0}}, -1.0);
  sharp("future_boosted", SpacetimePoint{{2.0, 1.0, 0.5, 0.0}}, 1.0);
  sharp("spacelike", SpacetimePoint{{0.0, 2.0, 0.0, 0.0}}, 0.0);
  sharp("spacelike_tilted", SpacetimePoint{{0.5, 0.0, 1.0, 0.2}}, 0.0);
  rep.seconds = timer.seconds();
  return rep;
}

/// kappa = 0 reproduces (p - q)^2; the quantum part is nonnegative and
/// follows the closed-form logarithm for Planck-width bumps.
inline SuiteReport classical_limit(const Options& opt) {
  detail::Timer timer;
  SuiteReport rep{"classical", {}, 0.0};
  Integrator integ(opt.quad);
  std::mt19937_64 rng(opt.seed + 3);

  bool exact = true;
  for (int i = 0; i < 50; ++i) {
    const GaussianBump p(detail::random_point(rng, 2.0), detail::log_uniform(rng, 0.5, 1e3));
    const GaussianBump q(detail::random_point(rng, 2.0), detail::log_uniform(rng, 0.5, 1e3));
    const DistanceBreakdown d = distance(p, q, PhysicalConstants(0.0), integ);
    exact = exact && d.total == minkowski_interval(p.center, q.center) && d.quantum == 0.0;
  }
  rep.checks.push_back(bool_check("kappa0_total_equals_interval_exactly", exact));

  double worst = 1e300;
  bool positive = true;
  const PhysicalConstants k{};
  for (int i = 0; i < 200; ++i) {
    const GaussianBump p(detail::random_point(rng, 2.0), detail::log_uniform(rng, 0.5, 1e3));
    const GaussianBump q(detail::random_point(rng, 2.0), detail::log_uniform(rng, 0.5, 1e3));
    const DistanceBreakdown d = distance(p, q, k, integ);
    worst = std::min(worst, d.quantum + 2.0 * d.error);
    positive = positive && d.quantum >= -2.0 * d.error;
  }
  rep.checks.push_back({"quantum_nonnegative_min", 0.0, worst, 0.0, positive});

  // a = 2c / l^2 with c = e^{2(1-gamma)} / 4
  const double l = 1e-2;
  const PhysicalConstants kl(l);
  const double a = 2.0 * (std::exp(2.0 * kOneMinusGamma) / 4.0) / (l * l);
  const double ks = kl.kappa_sq();
  for (double ratio : {1e1, 1e2, 1e3, 1e4}) {
    const double t = std::sqrt(ratio) * l;  // |(p - q)^2| = ratio * l^2
    const GaussianBump p(SpacetimePoint{{t, 0.0, 0.0, 0.0}}, a), q(SpacetimePoint{}, a);
    const DistanceBreakdown d = distance(p, q, kl, integ);
    const double closed = ks / (2.0 * std::numbers::pi * std::numbers::pi) * std::log(ratio / 2.0);
    const std::string tag = "ratio=" + std::to_string(static_cast<long>(ratio));
    rep.checks.push_back(rel_check("closed_form_5pct/" + tag, closed, d.quantum, 0.05));
  }
  rep.seconds = timer.seconds();
  return rep;
}

/// Reduced quadrature against the 8D Monte Carlo oracle, and MC determinism.
inline SuiteReport oracle(const Options& opt) {
  detail::Timer timer;
  SuiteReport rep{"oracle", {}, 0.0};
  std::mt19937_64 rng(opt.seed + 4);
  QuadratureConfig mc = opt.quad;
  mc.mc_samples = std::max<std::uint64_t>(mc.mc_samples, 20000);
  const FourCovector e0{{1.0, 0.0, 0.0, 0.0}};
  const Mat4 id = identity_matrix();

  int failures = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 200; ++i) {
    const KernelKind kind = i % 2 == 0 ? KernelKind::Lightcone : KernelKind::LogAbs;
    const GaussianBump p(detail::random_point(rng, 1.5), detail::log_uniform(rng, 0.5, 50.0));
    const GaussianBump q(detail::random_point(rng, 1.5), detail::log_uniform(rng, 0.5, 50.0));
    const QuadratureResult r = gaussian_pair_reduce(kind, p, q, opt.quad);
    mc.seed = opt.seed + 1000 + static_cast<std::uint64_t>(i);
    const QuadratureResult m = mc_oracle(kind, VectorSmearing::single(e0, p), VectorSmearing::single(e0, q), id, mc);
    const double combined = r.error + m.error;
    const double diff = std::abs(r.value - m.value);
    worst_ratio = std::max(worst_ratio, diff == 0.0 ? 0.0 : diff / combined);
    failures += !(diff <= 2.0 * combined);
  }
  rep.checks.push_back({"max_|reduced-mc|/combined_error", 2.0, worst_ratio, 0.0, failures == 0});

  const GaussianBump p(SpacetimePoint{{0.7, 0.2, 0.0, 0.0}}, 3.0), q(SpacetimePoint{}, 5.0);
  const VectorSmearing f = detail::scalar_bump_difference(p, q);
  bool identical = true;
  QuadratureConfig c1 = opt.quad;
  c1.mc_samples = 50000;
  c1.workers = 1;
  for (KernelKind kind : {KernelKind::Lightcone, KernelKind::LogAbs}) {
    const QuadratureResult base = mc_oracle(kind, f, f, id, c1);
    for (unsigned w : {2u, 3u, 8u}) {
      QuadratureConfig cw = c1;
      cw.workers = w;
      const QuadratureResult other = mc_oracle(kind, f, f, id, cw);
      identical = identical && other.value == base.value && other.error == base.error;
    }
  }
  rep.checks.push_back(bool_check("mc_bit_identical_across_workers", identical));
  rep.seconds = timer.seconds();
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"minvar", "fourier", "gram",     "weyl",
                                              "alpha-limit", "causal", "classical", "oracle"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const Options& opt) {
  if (name == "minvar") return minvar(opt);
  if (name == "fourier") return fourier(opt);
  if (name == "gram") return gram(opt);
  if (name == "weyl") return weyl(opt);
  if (name == "alpha-limit") return alpha_limit(opt);
  if (name == "causal") return causal_suite(opt);
  if (name == "classical") return classical_limit(opt);
  if (name == "oracle") return oracle(opt);
  throw PreconditionError("unknown verification suite: " + name);
}

}  // namespace ncst::verify

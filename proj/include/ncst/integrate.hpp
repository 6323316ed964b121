// Bilinear forms ∬ f(x) K(x - x') g(x') d^4x d^4x' over Gaussian smearings.
//
// Production path: for a bump pair the relative coordinate y = x - x' is
// Gaussian, N(d, s^2 I) with d = c_p - c_q and s^2 = 1/(2a_p) + 1/(2a_q).
// The centroid integrates out, the angular average of the displaced spatial
// Gaussian is closed form, and for both non-trivial kernels the time integral
// over t_y is closed form too (erfc for the light cone, E ln|N(mu, s^2)| for
// the log kernel). What remains is a smooth radial integral over r = |y|,
// done by adaptive Gauss-Kronrod with panel breaks at r = |d0| (the light
// cone crossing) and r = R.
//
// mc_oracle() samples the original 8D integral directly and shares nothing
// with the reduced path except the pointwise kernels.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string_view>
#include <tuple>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ncst/core.hpp"
#include "ncst/kernels.hpp"
#include "ncst/parallel.hpp"
#include "ncst/testfn.hpp"

namespace ncst {

struct QuadratureConfig {
  double rel_tol = 1e-3;
  double abs_tol = 1e-10;
  std::uint64_t max_evals = 2'000'000;
  std::uint64_t mc_samples = 100'000;
  std::uint64_t seed = 20240601;
  unsigned workers = 0;  // 0: NCST_WORKERS or hardware threads

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw PreconditionError("quadrature tolerances must be positive");
    if (max_evals == 0) throw PreconditionError("max_evals must be positive");
  }
};

enum class QuadMethod { Reduced2D, MC8D, Analytic };

inline std::string_view to_string(QuadMethod m) {
  switch (m) {
    case QuadMethod::Reduced2D: return "REDUCED2D";
    case QuadMethod::MC8D: return "MC8D";
    case QuadMethod::Analytic: return "ANALYTIC";
  }
  return "?";
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  QuadMethod method = QuadMethod::Analytic;
  std::uint64_t evals = 0;
  bool converged = true;

  /// this += coef * r, with absolute error propagation.
  void accumulate(double coef, const QuadratureResult& r) {
    value += coef * r.value;
    error += std::abs(coef) * r.error;
    evals += r.evals;
    converged = converged && r.converged;
    if (r.method != QuadMethod::Analytic && coef != 0.0) method = r.method;
  }

  QuadratureResult scaled(double s) const {
    QuadratureResult r = *this;
    r.value *= s;
    r.error *= std::abs(s);
    return r;
  }
};

struct ComplexResult {
  std::complex<double> value{};
  double error = 0.0;
  QuadMethod method = QuadMethod::Reduced2D;
  std::uint64_t evals = 0;
  bool converged = true;
};

namespace detail {

inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr double kLn2 = std::numbers::ln2;

/// E ln|mu + sigma Z| for standard normal Z.
///
/// Small |mu|/sigma: X^2/sigma^2 is noncentral chi-square with one degree of
/// freedom, a Poisson(lambda^2) mixture of central ones, so
/// E ln X^2 = ln(2 sigma^2) + sum_k Pois(k) digamma(k + 1/2).
/// Large |mu|/sigma: asymptotic series in 1/lambda^2 (truncated near its
/// smallest term, error ~ e^{-lambda^2}).
inline double expected_log_abs_normal(double mu, double sigma) {
  if (sigma <= 0.0) return std::log(std::abs(mu));
  const double lam2 = mu * mu / (2.0 * sigma * sigma);
  if (lam2 < 36.0) {
    double w = std::exp(-lam2);
    double psi = -kEulerGamma - 2.0 * kLn2;  // digamma(1/2)
    double sum = w * psi;
    const int kmax = static_cast<int>(lam2 + 12.0 * std::sqrt(lam2) + 40.0);
    for (int k = 1; k <= kmax; ++k) {
      psi += 1.0 / (k - 0.5);
      w *= lam2 / k;
      sum += w * psi;
    }
    return 0.5 * (std::log(2.0 * sigma * sigma) + sum);
  }
  // ln|mu| - sum_n (2n-1)!! / (2^{n+1} n lambda^{2n})
  double result = std::log(std::abs(mu));
  double dfact = 1.0, pow2 = 2.0, lampow = 1.0, prev = 1e300;
  for (int n = 1; n < 200; ++n) {
    dfact *= 2.0 * n - 1.0;
    pow2 *= 2.0;
    lampow *= lam2;
    const double term = dfact / (pow2 * n * lampow);
    if (term > prev || term < 1e-18 * std::abs(result) + 1e-300) break;
    result -= term;
    prev = term;
  }
  return result;
}

/// Radial density of |y_spatial| for y_spatial ~ N(D, s^2 I_3), |D| = R,
/// written with b = 1/(2 s^2). Integrates to one over r >= 0.
inline double shell_density(double r, double b, double R) {
  if (r <= 0.0) return 0.0;
  if (R == 0.0)
    return 4.0 * std::numbers::pi * r * r * std::pow(b / std::numbers::pi, 1.5) * std::exp(-b * r * r);
  const double dr = r - R;
  return std::sqrt(b / std::numbers::pi) * (r / R) * std::exp(-b * dr * dr) *
         (-std::expm1(-4.0 * b * r * R));
}

inline int depth_for(const QuadratureConfig& cfg) {
  // 21 evaluations per node; keep one panel well inside the eval budget.
  const double nodes = static_cast<double>(cfg.max_evals) / 21.0;
  return std::clamp(static_cast<int>(std::log2(std::max(nodes, 2.0))) - 1, 4, 18);
}

/// Adaptive Gauss-Kronrod over consecutive panels [pts[i], pts[i+1]].
template <class F>
QuadratureResult integrate_panels(F&& f, const std::vector<double>& pts, const QuadratureConfig& cfg) {
  QuadratureResult out;
  out.method = QuadMethod::Reduced2D;
  std::uint64_t evals = 0;
  auto counted = [&](double x) {
    ++evals;
    return f(x);
  };
  double l1_total = 0.0;
  const unsigned depth = static_cast<unsigned>(depth_for(cfg));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
        counted, pts[i], pts[i + 1], depth, cfg.rel_tol, &err, &l1);
    out.value += v;
    out.error += err;
    l1_total += l1;
  }
  out.evals = evals;
  out.converged = out.error <= std::max(cfg.abs_tol, cfg.rel_tol * l1_total) && evals <= cfg.max_evals;
  return out;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Random stream keyed on (seed, sample index): sample n draws the same
/// numbers no matter which worker evaluates it.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index)
      : state_(splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ull))) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1].
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = rad * std::sin(ang);
    has_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace detail

/// Law of the relative coordinate y = x - x' for x ~ p, x' ~ q.
struct PairGeometry {
  double d0 = 0.0;  // time component of c_p - c_q
  double R = 0.0;   // spatial distance |c_p - c_q|
  double s2 = 0.0;  // per-coordinate variance of y
};

inline PairGeometry pair_geometry(const GaussianBump& p, const GaussianBump& q) {
  const SpacetimePoint d = p.center - q.center;
  return {d[0], std::sqrt(d[1] * d[1] + d[2] * d[2] + d[3] * d[3]), 0.5 / p.width + 0.5 / q.width};
}

/// Scalar pair integral ∬ chi_p(x) K(x - x') chi_q(x') by dimension reduction.
inline QuadratureResult gaussian_pair_reduce(KernelKind kind, const GaussianBump& p,
                                             const GaussianBump& q, const QuadratureConfig& cfg) {
  if (kind == KernelKind::Constant) return {1.0, 0.0, QuadMethod::Analytic, 0, true};

  const PairGeometry g = pair_geometry(p, q);
  const double s = std::sqrt(g.s2);
  const double b = 0.5 / g.s2;
  const double lo = std::max(0.0, g.R - 12.0 * s);
  const double hi = g.R + 12.0 * s;
  std::vector<double> pts{lo, hi};
  const double cone = std::abs(g.d0);
  for (double x : {cone - 3.0 * s, cone, cone + 3.0 * s, g.R})
    if (x > lo && x < hi) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  if (kind == KernelKind::Lightcone) {
    const double k = 1.0 / (std::numbers::sqrt2 * s);
    auto f = [&](double r) {
      // P(t_y > r) - P(t_y < -r) for t_y ~ N(d0, s^2)
      const double time_part = 0.5 * (std::erfc((r - g.d0) * k) - std::erfc((r + g.d0) * k));
      return detail::shell_density(r, b, g.R) * time_part;
    };
    return detail::integrate_panels(f, pts, cfg);
  }
  // ln|t^2 - r^2| = ln|t - r| + ln|t + r|
  auto f = [&](double r) {
    const double time_part = detail::expected_log_abs_normal(g.d0 - r, s) +
                             detail::expected_log_abs_normal(g.d0 + r, s);
    return detail::shell_density(r, b, g.R) * time_part;
  };
  return detail::integrate_panels(f, pts, cfg);
}

/// Caches scalar pair integrals per (kernel, bump, bump) and assembles
/// bilinear forms from them. Safe to share between threads; a cached value
/// depends only on its key, so fill races cannot change results.
class Integrator {
 public:
  explicit Integrator(QuadratureConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

  const QuadratureConfig& config() const { return cfg_; }

  QuadratureResult pair(KernelKind kind, const GaussianBump& p, const GaussianBump& q) {
    if (kind == KernelKind::Constant) return {1.0, 0.0, QuadMethod::Analytic, 0, true};
    const Key key{static_cast<int>(kind), p, q};
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const QuadratureResult r = gaussian_pair_reduce(kind, p, q, cfg_);
    std::unique_lock lock(mutex_);
    return cache_.try_emplace(key, r).first->second;
  }

  /// Fills the cache for all listed pairs, in parallel.
  void prefetch(KernelKind kind, const std::vector<std::pair<GaussianBump, GaussianBump>>& pairs) {
    if (kind == KernelKind::Constant) return;
    std::vector<std::pair<GaussianBump, GaussianBump>> missing;
    {
      std::shared_lock lock(mutex_);
      for (const auto& pq : pairs)
        if (!cache_.contains(Key{static_cast<int>(kind), pq.first, pq.second})) missing.push_back(pq);
    }
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    parallel_for(missing.size(), worker_count(cfg_.workers),
                 [&](std::size_t i) { pair(kind, missing[i].first, missing[i].second); });
  }

  /// sum_ij c_i d_j ∬ chi_i K chi_j for scalar smearings.
  QuadratureResult scalar_form(KernelKind kind, const ScalarSmearing& h1, const ScalarSmearing& h2) {
    std::vector<std::pair<GaussianBump, GaussianBump>> keys;
    for (const auto& a : h1)
      for (const auto& c : h2) keys.emplace_back(a.bump, c.bump);
    prefetch(kind, keys);
    QuadratureResult out;
    for (const auto& a : h1)
      for (const auto& c : h2) out.accumulate(a.coef * c.coef, pair(kind, a.bump, c.bump));
    return out;
  }

  /// ∬ f_(mu)(x) C^{mu nu} K(x - x') g_(nu)(x'), contraction passed explicitly.
  QuadratureResult bilinear_form(KernelKind kind, const VectorSmearing& f, const VectorSmearing& g,
                                 const Mat4& contraction) {
    if (!is_symmetric(contraction, 1e-12)) throw PreconditionError("contraction must be symmetric");
    std::vector<std::pair<GaussianBump, GaussianBump>> keys;
    for (const auto& a : f.terms())
      for (const auto& c : g.terms()) keys.emplace_back(a.bump, c.bump);
    prefetch(kind, keys);
    QuadratureResult out;
    for (const auto& a : f.terms())
      for (const auto& c : g.terms()) {
        const double coef = a.weight * c.weight * contract(a.v, contraction, c.v);
        if (coef != 0.0) out.accumulate(coef, pair(kind, a.bump, c.bump));
      }
    return out;
  }

  std::size_t cache_size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
  }

 private:
  using Key = std::tuple<int, GaussianBump, GaussianBump>;
  QuadratureConfig cfg_;
  mutable std::shared_mutex mutex_;
  std::map<Key, QuadratureResult> cache_;
};

inline QuadratureResult bilinear_form(KernelKind kind, const VectorSmearing& f, const VectorSmearing& g,
                                      const Mat4& contraction, const QuadratureConfig& cfg) {
  Integrator integ(cfg);
  return integ.bilinear_form(kind, f, g, contraction);
}

/// Direct 8D Monte Carlo estimate of the same bilinear form.
///
/// A term pair (i, j) is drawn with probability |c_ij| / sum|c|, then
/// x ~ chi_i and x' ~ chi_j; the estimator is sign(c_ij) sum|c| K(x - x').
/// Samples are processed in fixed blocks merged in block order, so results are
/// bit-identical for any worker count. error = 1.96 standard errors, floored
/// for the light-cone kernel as described below.
inline QuadratureResult mc_oracle(KernelKind kind, const VectorSmearing& f, const VectorSmearing& g,
                                  const Mat4& contraction, const QuadratureConfig& cfg) {
  if (cfg.mc_samples < 2) throw PreconditionError("mc_samples must be at least 2");
  struct PairTerm {
    GaussianBump p, q;
    double coef;
  };
  std::vector<PairTerm> terms;
  for (const auto& a : f.terms())
    for (const auto& c : g.terms()) {
      const double coef = a.weight * c.weight * contract(a.v, contraction, c.v);
      if (coef != 0.0) terms.push_back({a.bump, c.bump, coef});
    }
  QuadratureResult out;
  out.method = QuadMethod::MC8D;
  out.evals = cfg.mc_samples;
  if (terms.empty()) return out;

  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& t : terms) {
    total += std::abs(t.coef);
    cumulative.push_back(total);
  }

  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t n = cfg.mc_samples;
  const std::size_t nblocks = static_cast<std::size_t>((n + kBlock - 1) / kBlock);
  std::vector<std::pair<double, double>> partial(nblocks);

  parallel_for(nblocks, worker_count(cfg.workers), [&](std::size_t blk) {
    const std::uint64_t begin = blk * kBlock;
    const std::uint64_t end = std::min(n, begin + kBlock);
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) {
      detail::CounterRng rng(cfg.seed, i);
      const double u = (rng.uniform() - 0x1.0p-53) * total;
      std::size_t k = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      k = std::min(k, terms.size() - 1);
      const PairTerm& t = terms[k];
      SpacetimePoint x = t.p.center, xp = t.q.center;
      const double sp = t.p.sigma(), sq = t.q.sigma();
      for (std::size_t m = 0; m < 4; ++m) x[m] += sp * rng.normal();
      for (std::size_t m = 0; m < 4; ++m) xp[m] += sq * rng.normal();
      double kv = 0.0;
      if (kind != KernelKind::LogAbs || minkowski_interval(x, xp) != 0.0) kv = kernel_value(kind, x, xp);
      const double val = (t.coef > 0.0 ? total : -total) * kv;
      sum += val;
      sumsq += val * val;
    }
    partial[blk] = {sum, sumsq};
  });

  double sum = 0.0, sumsq = 0.0;
  for (const auto& [s, s2] : partial) {
    sum += s;
    sumsq += s2;
  }
  const double dn = static_cast<double>(n);
  const double m = sum / dn;
  const double var = std::max(0.0, (sumsq - sum * m) / (dn - 1.0));
  out.value = m;
  out.error = 1.96 * std::sqrt(var / dn);
  // The light-cone estimator takes three values; when one never shows up the
  // sample variance understates the error. Rule of three: an outcome unseen in
  // n draws has probability below 3/n at 95%, and shifts the mean by at most 2T.
  if (kind == KernelKind::Lightcone) out.error = std::max(out.error, 6.0 * total / dn);
  return out;
}

namespace detail {

/// (h(k) - 1)/k for one bump pair, where
/// h(k) = sinc(kR) e^{-s^2 k^2} e^{-i k d0} (1 + i k d0 + s^2 k^2)
/// is the pair's Gaussian average of F_{-+} times 4|p|^3 after the angular
/// integral. h(0) = 1, and the 1 cancels between pairs for mean-zero data.
inline std::complex<double> momentum_pair_term(double k, const PairGeometry& g) {
  const double scale = std::max({std::abs(g.d0), g.R, std::sqrt(g.s2)});
  if (k * scale < 1e-4) {
    const double c1 = 0.5 * g.d0 * g.d0 - g.R * g.R / 6.0;
    const double c2 = g.d0 * g.d0 * g.d0 / 3.0 + g.s2 * g.d0;
    return {k * c1, -k * k * c2};
  }
  const double x = k * g.R;
  const double sinc = x < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  const double damp = std::exp(-g.s2 * k * k);
  const std::complex<double> phase = std::polar(1.0, -k * g.d0);
  const std::complex<double> bracket(1.0 + g.s2 * k * k, k * g.d0);
  return (sinc * damp * phase * bracket - 1.0) / k;
}

}  // namespace detail

/// ∬ f_(mu)(x) C^{mu nu} g_(nu)(x') ∫ F_{-+}(t, t', p) e^{i p.(x - x')} d^3p/(2pi)^3
/// with F_{-+} = e^{-i|p|(t-t')} [1 + i|p|(t-t')] / (4|p|^3).
///
/// The Gaussian Fourier transforms and the angular p-integral are analytic;
/// the remaining radial integral runs to the point where every Gaussian
/// damping factor is below 1e-16, in panels no longer than half an
/// oscillation period. Both smearings must have zero mean in every component.
inline ComplexResult momentum_form(const VectorSmearing& f, const VectorSmearing& g, const Mat4& contraction,
                                   const QuadratureConfig& cfg) {
  auto require_mean_zero = [](const VectorSmearing& h, const char* name) {
    const MeanVector m = mean(h);
    for (std::size_t mu = 0; mu < 4; ++mu) {
      double scale = 0.0;
      for (const auto& t : h.terms()) scale += std::abs(t.weight * t.v[mu]);
      if (std::abs(m[mu]) > 1e-12 * std::max(scale, 1e-300))
        throw PreconditionError(std::string("momentum_form needs a mean-zero smearing: ") + name);
    }
  };
  require_mean_zero(f, "f");
  require_mean_zero(g, "g");

  struct PairTerm {
    PairGeometry geom;
    double coef;
  };
  std::vector<PairTerm> terms;
  double s2_min = 1e300, omega = 0.0;
  for (const auto& a : f.terms())
    for (const auto& c : g.terms()) {
      const double coef = a.weight * c.weight * contract(a.v, contraction, c.v);
      if (coef == 0.0) continue;
      const PairGeometry pg = pair_geometry(a.bump, c.bump);
      terms.push_back({pg, coef});
      s2_min = std::min(s2_min, pg.s2);
      omega = std::max(omega, std::abs(pg.d0) + pg.R);
    }
  ComplexResult out;
  if (terms.empty()) return out;

  const double k_max = std::sqrt(-std::log(1e-16)) / std::sqrt(s2_min);
  const double period = omega > 0.0 ? std::numbers::pi / omega : k_max;
  const std::size_t panels =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(k_max / period)), 8, 200000);
  std::vector<double> pts(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) pts[i] = k_max * static_cast<double>(i) / panels;

  constexpr double pref = 1.0 / (8.0 * std::numbers::pi * std::numbers::pi);
  auto integrand = [&](double k) {
    std::complex<double> acc{};
    for (const auto& t : terms) acc += t.coef * detail::momentum_pair_term(k, t.geom);
    return pref * acc;
  };
  const auto re = detail::integrate_panels([&](double k) { return integrand(k).real(); }, pts, cfg);
  const auto im = detail::integrate_panels([&](double k) { return integrand(k).imag(); }, pts, cfg);
  out.value = {re.value, im.value};
  out.error = std::hypot(re.error, im.error);
  out.evals = re.evals + im.evals;
  out.converged = re.converged && im.converged;
  return out;
}

}  // namespace ncst

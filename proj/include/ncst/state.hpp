// Symplectic form, Krein involution, clipped log bidistribution and the
// Derezinski-Meissner bilinear form Delta_{alpha,psi} with its moments.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncst/core.hpp"
#include "ncst/integrate.hpp"
#include "ncst/parallel.hpp"
#include "ncst/testfn.hpp"

namespace ncst {

/// Real value with an absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// Complex value with separate error estimates for real and imaginary parts.
struct ComplexEstimate {
  std::complex<double> value{};
  double error_re = 0.0;
  double error_im = 0.0;
  bool converged = true;
};

struct IndexedEstimate {
  FourCovector value{};
  FourCovector error{};
  bool converged = true;
};

/// Everything that fixes the state and the Krein involution.
/// state_alpha is the state parameter, unrelated to bump widths.
struct DMStateParams {
  double state_alpha = 1.0;
  GaussianBump psi{SpacetimePoint{}, 1.0};
  PhysicalConstants constants{};
  FourVector u{{1.0, 0.0, 0.0, 0.0}};

  void validate() const {
    if (!(state_alpha > 0.0) || !std::isfinite(state_alpha))
      throw PreconditionError("state_alpha must be finite and > 0");
    require_unit_timelike(u);
  }
};

namespace detail {

inline constexpr double kSigmaPrefactor = -1.0 / (8.0 * std::numbers::pi);  // sigma / kappa^2

inline Estimate to_estimate(const QuadratureResult& r, double scale) {
  return {scale * r.value, std::abs(scale) * r.error, r.converged};
}

/// sigma(f, psi)_mu / kappa^2, with the scalar psi in the second slot.
inline IndexedEstimate sigma_indexed_reduced(const VectorSmearing& f, const GaussianBump& psi,
                                             Integrator& integ) {
  IndexedEstimate out;
  for (const auto& t : f.terms()) {
    const QuadratureResult r = integ.pair(KernelKind::Lightcone, t.bump, psi);
    for (std::size_t mu = 0; mu < 4; ++mu) {
      const double c = kSigmaPrefactor * t.weight * t.v[mu];
      out.value[mu] += c * r.value;
      out.error[mu] += std::abs(c) * r.error;
    }
    out.converged = out.converged && r.converged;
  }
  return out;
}

inline double eta_dot(const FourCovector& a, const FourCovector& b) {
  double s = 0.0;
  for (std::size_t m = 0; m < 4; ++m) s += kEta[m] * a[m] * b[m];
  return s;
}

inline double abs_dot(const FourCovector& a, const FourCovector& b) {
  double s = 0.0;
  for (std::size_t m = 0; m < 4; ++m) s += std::abs(a[m] * b[m]);
  return s;
}

}  // namespace detail

/// sigma(f, g) = -(kappa^2 / 8pi) ∬ f_mu eta^{mu nu} g_nu sgn(t - t') Theta[-(x - x')^2].
inline Estimate sigma(const VectorSmearing& f, const VectorSmearing& g, const PhysicalConstants& k,
                      Integrator& integ) {
  return detail::to_estimate(integ.bilinear_form(KernelKind::Lightcone, f, g, eta_matrix()),
                             detail::kSigmaPrefactor * k.kappa_sq());
}

/// sigma(f, psi)_mu with the free index left on f.
inline IndexedEstimate sigma_indexed(const VectorSmearing& f, const GaussianBump& psi,
                                     const PhysicalConstants& k, Integrator& integ) {
  IndexedEstimate r = detail::sigma_indexed_reduced(f, psi, integ);
  const double ks = k.kappa_sq();
  r.value = ks * r.value;
  r.error = ks * r.error;
  return r;
}

/// (Jf)_mu = (delta_mu^nu + 2 u_mu u^nu) f_nu; bumps untouched.
inline VectorSmearing krein_J(const VectorSmearing& f, const FourVector& u) {
  require_unit_timelike(u);
  const FourCovector ul = lower(u);
  std::vector<SmearingTerm> terms = f.terms();
  for (auto& t : terms) {
    const double uv = pairing(t.v, u);
    if (uv != 0.0) t.v = t.v + (2.0 * uv) * ul;
  }
  return VectorSmearing(std::move(terms));
}

/// Clipped polarization for scalar smearings:
/// 1/4 min[Q(h1 + h2), 0] - 1/4 min[Q(h1 - h2), 0], Q the LOGABS quadratic form.
inline Estimate log_minus_scalar(const ScalarSmearing& h1, const ScalarSmearing& h2, Integrator& integ) {
  const ScalarSmearing sum = combine(h1, 1.0, h2, 1.0);
  const ScalarSmearing diff = combine(h1, 1.0, h2, -1.0);
  const QuadratureResult qs = integ.scalar_form(KernelKind::LogAbs, sum, sum);
  const QuadratureResult qd = integ.scalar_form(KernelKind::LogAbs, diff, diff);
  Estimate out;
  out.value = 0.25 * std::min(qs.value, 0.0) - 0.25 * std::min(qd.value, 0.0);
  out.error = 0.25 * (qs.error + qd.error);
  out.converged = qs.converged && qd.converged;
  return out;
}

/// ∬ ln|(x - x')^2|_- f_mu C^{mu nu} g_nu, clipping applied per scalar
/// component pair (f_mu, g_nu).
inline Estimate log_minus_form(const VectorSmearing& f, const VectorSmearing& g, const Mat4& contraction,
                               Integrator& integ) {
  Estimate out;
  std::array<ScalarSmearing, 4> fc, gc;
  for (std::size_t m = 0; m < 4; ++m) {
    fc[m] = component(f, m);
    gc[m] = component(g, m);
  }
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n) {
      const double c = contraction[m][n];
      if (c == 0.0 || fc[m].empty() || gc[n].empty()) continue;
      const Estimate e = log_minus_scalar(fc[m], gc[n], integ);
      out.value += c * e.value;
      out.error += std::abs(c) * e.error;
      out.converged = out.converged && e.converged;
    }
  return out;
}

/// Delta_{alpha,psi}(f, g), expanded form:
/// -(kappa^2/16pi^2) ln_-(P f, P g) + alpha kappa^2 fbar.eta.gbar
///   + (1/(4 alpha kappa^2)) sigma(f,psi).eta.sigma(g,psi) + (i/2) sigma(f, g).
inline ComplexEstimate dm_bilinear(const VectorSmearing& f, const VectorSmearing& g, const DMStateParams& params,
                                   Integrator& integ) {
  params.validate();
  const double ks = params.constants.kappa_sq();
  constexpr double log_pref = 1.0 / (16.0 * std::numbers::pi * std::numbers::pi);

  const Estimate lm = log_minus_form(project_psi(f, params.psi), project_psi(g, params.psi), eta_matrix(), integ);
  const double mean_term = params.state_alpha * ks * detail::eta_dot(mean(f), mean(g));
  // sigma(.,psi) = kappa^2 * reduced; the kappa^-2 prefactor leaves kappa^2 / (4 alpha)
  const IndexedEstimate sf = detail::sigma_indexed_reduced(f, params.psi, integ);
  const IndexedEstimate sg = detail::sigma_indexed_reduced(g, params.psi, integ);
  const double ss_pref = ks / (4.0 * params.state_alpha);
  const double ss_term = ss_pref * detail::eta_dot(sf.value, sg.value);
  const double ss_err = ss_pref * (detail::abs_dot(sf.value, sg.error) + detail::abs_dot(sf.error, sg.value) +
                                   detail::abs_dot(sf.error, sg.error));
  const Estimate sig = sigma(f, g, params.constants, integ);

  ComplexEstimate out;
  out.value = {-ks * log_pref * lm.value + mean_term + ss_term, 0.5 * sig.value};
  out.error_re = ks * log_pref * lm.error + ss_err;
  out.error_im = 0.5 * sig.error;
  out.converged = lm.converged && sf.converged && sg.converged && sig.converged;
  return out;
}

/// Same form, assembled from the completed-square expression
/// (i/2) sigma(Pf, Pg) + alpha kappa^2 (fbar + i sigma(f,psi)/(2 alpha kappa^2)).eta.(gbar - i ...).
/// Used to cross-check dm_bilinear.
inline ComplexEstimate dm_bilinear_completed(const VectorSmearing& f, const VectorSmearing& g,
                                             const DMStateParams& params, Integrator& integ) {
  params.validate();
  const double ks = params.constants.kappa_sq();
  const double alpha = params.state_alpha;
  constexpr double log_pref = 1.0 / (16.0 * std::numbers::pi * std::numbers::pi);
  const VectorSmearing pf = project_psi(f, params.psi), pg = project_psi(g, params.psi);

  const Estimate lm = log_minus_form(pf, pg, eta_matrix(), integ);
  const Estimate sp = sigma(pf, pg, params.constants, integ);
  const IndexedEstimate sf = detail::sigma_indexed_reduced(f, params.psi, integ);
  const IndexedEstimate sg = detail::sigma_indexed_reduced(g, params.psi, integ);
  const MeanVector fb = mean(f), gb = mean(g);
  std::complex<double> square{};
  for (std::size_t m = 0; m < 4; ++m) {
    const std::complex<double> a(fb[m], sf.value[m] / (2.0 * alpha));
    const std::complex<double> b(gb[m], -sg.value[m] / (2.0 * alpha));
    square += kEta[m] * a * b;
  }
  ComplexEstimate out;
  out.value = -ks * log_pref * lm.value + std::complex<double>(0.0, 0.5 * sp.value) + alpha * ks * square;
  out.error_re = ks * log_pref * lm.error +
                 ks / (4.0 * alpha) * (detail::abs_dot(sf.value, sg.error) + detail::abs_dot(sf.error, sg.value));
  out.error_im = 0.5 * sp.error + 0.5 * ks * (detail::abs_dot(fb, sg.error) + detail::abs_dot(sf.error, gb));
  out.converged = lm.converged && sp.converged && sf.converged && sg.converged;
  return out;
}

/// mu_2(f, g) = Delta_{alpha,psi}(f, J g).
inline ComplexEstimate mu2(const VectorSmearing& f, const VectorSmearing& g, const DMStateParams& params,
                           Integrator& integ) {
  return dm_bilinear(f, krein_J(g, params.u), params, integ);
}

/// True if mu_2(f, f) looks wrong: imaginary part beyond its error budget, or
/// a real part below zero by more than its error.
inline bool mu2_diagonal_suspect(const ComplexEstimate& m) {
  const double slack = 1e-12 * (1.0 + std::abs(m.value));
  return std::abs(m.value.imag()) > 2.0 * m.error_im + slack || m.value.real() < -2.0 * m.error_re - slack;
}

enum class GramKind { N, M };

inline std::string_view to_string(GramKind k) { return k == GramKind::N ? "N_MATRIX" : "M_MATRIX"; }

struct GramReport {
  Eigen::MatrixXcd matrix;
  double min_eigenvalue = 0.0;
  double spectral_norm = 0.0;
  double hermiticity_defect = 0.0;
  bool is_psd = false;
  GramKind which = GramKind::N;
};

inline constexpr double kPsdRelTol = 1e-10;

/// Eigen-analysis of the Hermitian part of `m`.
inline GramReport analyze_gram(const Eigen::MatrixXcd& m, GramKind which) {
  GramReport r;
  r.matrix = m;
  r.which = which;
  if (m.size() == 0) {
    r.is_psd = true;
    return r;
  }
  r.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  r.min_eigenvalue = ev.minCoeff();
  r.spectral_norm = ev.cwiseAbs().maxCoeff();
  r.is_psd = r.min_eigenvalue >= -kPsdRelTol * r.spectral_norm;
  return r;
}

struct GramCheck {
  GramReport n;
  GramReport m;
  double max_entry_error = 0.0;
  bool converged = true;
};

/// N_kl = mu_2(f_k, f_l) (the i/2 sigma(f_k, J f_l) part is already inside
/// mu_2) and M_kl = exp(N_kl). Entries are computed in parallel.
inline GramCheck gram_check(const std::vector<VectorSmearing>& family, const DMStateParams& params,
                            Integrator& integ) {
  const std::size_t n = family.size();
  std::vector<ComplexEstimate> entries(n * n);
  parallel_for(n * n, worker_count(integ.config().workers), [&](std::size_t idx) {
    entries[idx] = mu2(family[idx / n], family[idx % n], params, integ);
  });
  Eigen::MatrixXcd nm(n, n), mm(n, n);
  GramCheck out;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const ComplexEstimate& e = entries[k * n + l];
      nm(k, l) = e.value;
      mm(k, l) = std::exp(e.value);
      out.max_entry_error = std::max(out.max_entry_error, std::hypot(e.error_re, e.error_im));
      out.converged = out.converged && e.converged;
    }
  out.n = analyze_gram(nm, GramKind::N);
  out.m = analyze_gram(mm, GramKind::M);
  return out;
}

struct PairCondition {
  bool holds = false;
  double margin = 0.0;
  double error = 0.0;
};

/// Re mu_2(f,f) Re mu_2(g,g) - 1/4 sigma(f, Jg)^2.
inline PairCondition pair_condition(const VectorSmearing& f, const VectorSmearing& g, const DMStateParams& params,
                                    Integrator& integ) {
  const ComplexEstimate ff = mu2(f, f, params, integ);
  const ComplexEstimate gg = mu2(g, g, params, integ);
  const Estimate s = sigma(f, krein_J(g, params.u), params.constants, integ);
  PairCondition out;
  const double a = ff.value.real(), b = gg.value.real();
  out.margin = a * b - 0.25 * s.value * s.value;
  out.error = std::abs(a) * gg.error_re + std::abs(b) * ff.error_re + ff.error_re * gg.error_re +
              0.5 * std::abs(s.value) * s.error;
  out.holds = out.margin >= -out.error;
  return out;
}

}  // namespace ncst

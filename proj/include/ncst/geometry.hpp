// Distance and causal functionals between localized points chi_p, chi_q.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "ncst/core.hpp"
#include "ncst/integrate.hpp"
#include "ncst/state.hpp"
#include "ncst/testfn.hpp"
#include "ncst/weyl.hpp"

namespace ncst {

/// A positive mean-1 bump standing for the point at its center.
struct LocalizedPoint {
  GaussianBump bump;

  LocalizedPoint(SpacetimePoint p, double width) : bump(p, width) {}
  explicit LocalizedPoint(GaussianBump b) : bump(b) {}

  SpacetimePoint nominal_point() const { return bump.center; }
};

struct DistanceBreakdown {
  double classical = 0.0;
  double quantum = 0.0;
  double total = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// chi_p - chi_q as a scalar smearing.
inline ScalarSmearing scalar_difference(const GaussianBump& p, const GaussianBump& q) {
  return combine({{1.0, p}}, 1.0, {{1.0, q}}, -1.0);
}

/// eta_{mu nu} ∬ x^mu x'^nu [chi_p - chi_q](x) [chi_p - chi_q](x'). First
/// moments factorize, leaving (p - q)^2 for any widths.
inline double classical_term(const GaussianBump& p, const GaussianBump& q) {
  return minkowski_interval(p.center, q.center);
}

/// D_{alpha,psi}: classical term plus eta_ab Delta(f^(a) - g^(a), f^(b) - g^(b)).
inline DistanceBreakdown distance_alpha(const GaussianBump& p, const GaussianBump& q, const DMStateParams& params,
                                        Integrator& integ, const Frame& frame = Frame{}) {
  DistanceBreakdown out;
  out.classical = classical_term(p, q);
  const auto fa = frame_smearings(p, frame);
  const auto ga = frame_smearings(q, frame);
  for (std::size_t a = 0; a < 4; ++a) {
    const VectorSmearing h = fa[a] - ga[a];
    const ComplexEstimate d = dm_bilinear(h, h, params, integ);
    out.quantum += Frame::weight(a) * d.value.real();
    out.error += d.error_re;
    out.converged = out.converged && d.converged;
  }
  out.total = out.classical + out.quantum;
  return out;
}

/// D = lim_{alpha -> inf} D_{alpha,psi}
///   = (p - q)^2 - (kappa^2 / 4pi^2) ∬ ln|(x - x')^2|_- [chi_p - chi_q][chi_p - chi_q].
inline DistanceBreakdown distance(const GaussianBump& p, const GaussianBump& q, const PhysicalConstants& k,
                                  Integrator& integ) {
  DistanceBreakdown out;
  out.classical = classical_term(p, q);
  const double pref = k.kappa_sq() / (4.0 * std::numbers::pi * std::numbers::pi);
  if (pref != 0.0) {
    const ScalarSmearing h = scalar_difference(p, q);
    const Estimate lm = log_minus_scalar(h, h, integ);
    out.quantum = -pref * lm.value;
    out.error = pref * lm.error;
    out.converged = lm.converged;
  }
  out.total = out.classical + out.quantum;
  return out;
}

/// Frame-summed omega second moment sum_a eta_aa omega([X(f^(a)) - X(g^(a))]^2)
/// = sum_a eta_aa { [mu_1(f^(a) - g^(a))]^2 + Re Delta(h, J h) }. Depends on u;
/// diagnostics only.
inline DistanceBreakdown omega_second_moment(const GaussianBump& p, const GaussianBump& q,
                                             const DMStateParams& params, Integrator& integ,
                                             const Frame& frame = Frame{}) {
  DistanceBreakdown out;
  const auto fa = frame_smearings(p, frame);
  const auto ga = frame_smearings(q, frame);
  for (std::size_t a = 0; a < 4; ++a) {
    const VectorSmearing h = fa[a] - ga[a];
    const double m1 = moment1(h);
    const ComplexEstimate m = mu2(h, h, params, integ);
    out.classical += Frame::weight(a) * m1 * m1;
    out.quantum += Frame::weight(a) * m.value.real();
    out.error += m.error_re;
    out.converged = out.converged && m.converged;
  }
  out.total = out.classical + out.quantum;
  return out;
}

/// 2 sigma(p,q) + (8 l^2 / pi) ln(|sigma(p,q)| / l^2), sigma the world function.
inline double corrected_synge(const SpacetimePoint& p, const SpacetimePoint& q, const PhysicalConstants& k) {
  const double s = synge(p, q);
  if (s == 0.0) throw PreconditionError("corrected_synge: null or coincident points");
  const double l2 = k.planck_length() * k.planck_length();
  if (l2 == 0.0) return 2.0 * s;
  return 2.0 * s + (8.0 * l2 / std::numbers::pi) * std::log(std::abs(s) / l2);
}

/// C(chi_p, chi_q) = ∬ chi_p(x) chi_q(x') sgn(t - t') Theta[-(x - x')^2].
inline Estimate causal(const GaussianBump& p, const GaussianBump& q, Integrator& integ) {
  const QuadratureResult r = integ.pair(KernelKind::Lightcone, p, q);
  return {r.value, r.error, r.converged};
}

struct WeylCausal {
  double value = 0.0;
  double error = 0.0;
  bool branch_cut_suspect = false;
  bool converged = true;
};

/// C through its definition: -(4 pi i / kappa^2) eta_ab ln tau(W(f^(a)) W(g^(b)) W(-f^(a) - g^(b))).
/// Only diagonal frame pairs contribute since eta_ab is diagonal.
inline WeylCausal causal_via_weyl(const GaussianBump& p, const GaussianBump& q, const DMStateParams& params,
                                  Integrator& integ, Pairing pairing = Pairing::Standard,
                                  const Frame& frame = Frame{}) {
  const double ks = params.constants.kappa_sq();
  if (ks == 0.0) throw PreconditionError("causal_via_weyl needs kappa != 0");
  WeylAlgebra alg(integ, params.constants, pairing, params.u);
  const auto fa = frame_smearings(p, frame);
  const auto ga = frame_smearings(q, frame);
  WeylCausal out;
  std::complex<double> acc{};
  for (std::size_t a = 0; a < 4; ++a) {
    const WeylElement prod =
        alg.mul(alg.mul(WeylElement::generator(fa[a]), WeylElement::generator(ga[a])),
                WeylElement::generator(-(fa[a] + ga[a])));
    const FunctionalValue t = eval_tau(prod, params, integ);
    out.converged = out.converged && t.converged;
    // The triple product is a pure phase times the unit.
    const double tol = 1e-9 + t.error;
    if (std::abs(std::abs(t.value) - 1.0) > tol || std::abs(std::arg(t.value)) > std::numbers::pi - 1e-6)
      out.branch_cut_suspect = true;
    acc += Frame::weight(a) * std::log(t.value);
    out.error += t.error;
  }
  const std::complex<double> c = std::complex<double>(0.0, -4.0 * std::numbers::pi / ks) * acc;
  out.value = c.real();
  out.error *= 4.0 * std::numbers::pi / ks;
  return out;
}

/// Polynomial extrapolation to x = 0 through the points (x_i, y_i) (Neville).
/// With x = 1/width this is the Richardson limit of a width sweep.
inline double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) throw PreconditionError("extrapolation needs matching, nonempty data");
  std::vector<double> p = y;
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) {
      const double den = x[i] - x[i + m];
      if (den == 0.0) throw PreconditionError("extrapolation nodes must be distinct");
      p[i] = (x[i] * p[i + 1] - x[i + m] * p[i]) / den;
    }
  return p[0];
}

struct WidthSweepPoint {
  double width = 0.0;
  Estimate value;
};

struct WidthSweep {
  std::vector<WidthSweepPoint> points;
  double limit = 0.0;  // extrapolated in 1/width
};

/// Evaluates fn(chi_p, chi_q) along a width sweep and extrapolates a -> inf.
inline WidthSweep width_sweep(const SpacetimePoint& p, const SpacetimePoint& q, const std::vector<double>& widths,
                              const std::function<Estimate(const GaussianBump&, const GaussianBump&)>& fn) {
  WidthSweep out;
  std::vector<double> xs, ys;
  for (double a : widths) {
    const GaussianBump bp(p, a), bq(q, a);
    const Estimate e = fn(bp, bq);
    out.points.push_back({a, e});
    xs.push_back(1.0 / a);
    ys.push_back(e.value);
  }
  out.limit = extrapolate_to_zero(xs, ys);
  return out;
}

}  // namespace ncst

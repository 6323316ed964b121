// Finite elements of the Weyl algebra sum_k c_k W(f_k), their products via
// W(f) W(g) = W(f + g) exp[-(i/2) sigma(f, g)], the star, and the
// functionals omega (the quasi-free state) and tau.
#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

#include "ncst/integrate.hpp"
#include "ncst/state.hpp"
#include "ncst/testfn.hpp"

namespace ncst {

/// Coefficient with the accumulated phase uncertainty (radians) from the
/// sigma values that produced it.
struct WeylCoef {
  std::complex<double> value{};
  double phase_error = 0.0;
};

class WeylElement {
 public:
  using Terms = std::map<VectorSmearing, WeylCoef>;

  WeylElement() = default;

  static WeylElement unit() { return generator(VectorSmearing{}); }

  static WeylElement generator(const VectorSmearing& f, std::complex<double> c = 1.0) {
    WeylElement e;
    e.add(f, {c, 0.0});
    return e;
  }

  /// Adds c W(f); smearings are keyed by canonical form, exact zeros pruned.
  void add(const VectorSmearing& f, const WeylCoef& c) {
    if (c.value == std::complex<double>{}) return;
    auto [it, inserted] = terms_.try_emplace(f.canonical(), c);
    if (!inserted) {
      it->second.value += c.value;
      it->second.phase_error = std::max(it->second.phase_error, c.phase_error);
      if (it->second.value == std::complex<double>{}) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  WeylElement& operator+=(const WeylElement& o) {
    for (const auto& [f, c] : o.terms_) add(f, c);
    return *this;
  }
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator*(std::complex<double> s, const WeylElement& a) {
    WeylElement out;
    for (const auto& [f, c] : a.terms_) out.add(f, {s * c.value, c.phase_error});
    return out;
  }

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || i->second.value != j->second.value) return false;
    return true;
  }

 private:
  Terms terms_;
};

/// [sum c_k W(f_k)]* = sum conj(c_k) W(-f_k).
inline WeylElement weyl_star(const WeylElement& a) {
  WeylElement out;
  for (const auto& [f, c] : a.terms()) out.add(-f, {std::conj(c.value), c.phase_error});
  return out;
}

/// Which symplectic pairing enters the Weyl relations: sigma(f, g) or the
/// Krein-modified sigma(f, J g).
enum class Pairing { Standard, Krein };

/// Product and functionals for one choice of constants and pairing, with a
/// sigma cache keyed on canonical smearing pairs.
class WeylAlgebra {
 public:
  WeylAlgebra(Integrator& integ, PhysicalConstants constants, Pairing pairing = Pairing::Standard,
              FourVector u = FourVector{{1.0, 0.0, 0.0, 0.0}})
      : integ_(integ), constants_(constants), pairing_(pairing), u_(u) {
    require_unit_timelike(u_);
  }

  Pairing pairing() const { return pairing_; }
  const PhysicalConstants& constants() const { return constants_; }

  /// The pairing used in products: sigma(f, g) or sigma(f, J g).
  Estimate pairing_value(const VectorSmearing& f, const VectorSmearing& g) {
    const auto key = std::make_pair(f.canonical(), g.canonical());
    if (key.first.empty() || key.second.empty()) return {};
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const VectorSmearing rhs = pairing_ == Pairing::Krein ? krein_J(key.second, u_) : key.second;
    const Estimate s = sigma(key.first, rhs, constants_, integ_);
    std::unique_lock lock(mutex_);
    return cache_.try_emplace(key, s).first->second;
  }

  WeylElement mul(const WeylElement& a, const WeylElement& b) {
    WeylElement out;
    for (const auto& [f, cf] : a.terms())
      for (const auto& [g, cg] : b.terms()) {
        const Estimate s = pairing_value(f, g);
        const std::complex<double> phase = std::polar(1.0, -0.5 * s.value);
        out.add(f + g, {cf.value * cg.value * phase, cf.phase_error + cg.phase_error + 0.5 * s.error});
      }
    return out;
  }

  std::size_t cache_size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
  }

 private:
  Integrator& integ_;
  PhysicalConstants constants_;
  Pairing pairing_;
  FourVector u_;
  mutable std::shared_mutex mutex_;
  std::map<std::pair<VectorSmearing, VectorSmearing>, Estimate> cache_;
};

/// Value of a functional on an element, with an absolute error bound.
/// `suspect` marks a mu_2(f,f) whose imaginary part or sign is off budget.
struct FunctionalValue {
  std::complex<double> value{};
  double error = 0.0;
  bool suspect = false;
  bool converged = true;
};

/// omega(sum c_k W(f_k)) = sum c_k exp[i mu_1(f_k) - 1/2 Re mu_2(f_k, f_k)].
inline FunctionalValue eval_omega(const WeylElement& a, const DMStateParams& params, Integrator& integ) {
  FunctionalValue out;
  for (const auto& [f, c] : a.terms()) {
    if (f.empty()) {
      out.value += c.value;
      out.error += std::abs(c.value) * c.phase_error;
      continue;
    }
    const ComplexEstimate m = mu2(f, f, params, integ);
    out.suspect = out.suspect || mu2_diagonal_suspect(m);
    out.converged = out.converged && m.converged;
    const std::complex<double> t = c.value * std::exp(std::complex<double>(-0.5 * m.value.real(), moment1(f)));
    out.value += t;
    out.error += std::abs(t) * (0.5 * m.error_re + c.phase_error);
  }
  return out;
}

/// tau(sum c_k W(f_k)) = sum c_k exp[i mu_1(f_k) - 1/2 Delta(f_k, f_k)]. Not
/// positive: Delta(f, f) can be negative through the mean term.
inline FunctionalValue eval_tau(const WeylElement& a, const DMStateParams& params, Integrator& integ) {
  FunctionalValue out;
  for (const auto& [f, c] : a.terms()) {
    if (f.empty()) {
      out.value += c.value;
      out.error += std::abs(c.value) * c.phase_error;
      continue;
    }
    const ComplexEstimate d = dm_bilinear(f, f, params, integ);
    out.converged = out.converged && d.converged;
    const std::complex<double> t =
        c.value * std::exp(std::complex<double>(0.0, moment1(f)) - 0.5 * d.value);
    out.value += t;
    out.error += std::abs(t) * (0.5 * std::hypot(d.error_re, d.error_im) + c.phase_error);
  }
  return out;
}

}  // namespace ncst

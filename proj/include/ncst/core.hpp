// Metric conventions, frames, physical constants and exact interval arithmetic
// on Minkowski space. Signature (-,+,+,+), c = 1.
#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ncst {

/// Raised when an operation is called outside its domain (bad input, not a
/// numerical failure).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Diagonal of the Minkowski metric; eta_{mu nu} and eta^{mu nu} coincide.
inline constexpr Vec4 kEta{-1.0, 1.0, 1.0, 1.0};

/// An event x^mu = (t, x, y, z) in units of length.
struct SpacetimePoint {
  Vec4 coords{};

  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }

  friend auto operator<=>(const SpacetimePoint&, const SpacetimePoint&) = default;
  friend bool operator==(const SpacetimePoint&, const SpacetimePoint&) = default;
};

/// Lower-index dual vector v_mu.
struct FourCovector {
  Vec4 comps{};

  double operator[](std::size_t i) const { return comps[i]; }
  double& operator[](std::size_t i) { return comps[i]; }

  FourCovector& operator+=(const FourCovector& o) {
    for (std::size_t i = 0; i < 4; ++i) comps[i] += o.comps[i];
    return *this;
  }
  friend FourCovector operator+(FourCovector a, const FourCovector& b) { return a += b; }
  friend FourCovector operator-(const FourCovector& a) {
    return {{-a[0], -a[1], -a[2], -a[3]}};
  }
  friend FourCovector operator-(const FourCovector& a, const FourCovector& b) { return a + (-b); }
  friend FourCovector operator*(double s, const FourCovector& a) {
    return {{s * a[0], s * a[1], s * a[2], s * a[3]}};
  }

  bool is_zero() const { return comps == Vec4{0.0, 0.0, 0.0, 0.0}; }

  friend auto operator<=>(const FourCovector&, const FourCovector&) = default;
  friend bool operator==(const FourCovector&, const FourCovector&) = default;
};

/// Upper-index vector u^mu (used for the Krein observer).
using FourVector = SpacetimePoint;

inline bool is_finite(const Vec4& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline SpacetimePoint operator-(const SpacetimePoint& p, const SpacetimePoint& q) {
  return {{p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]}};
}

inline SpacetimePoint operator+(const SpacetimePoint& p, const SpacetimePoint& q) {
  return {{p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]}};
}

/// Signed squared interval (p-q)^2 = -(dt)^2 + |dx|^2.
inline double minkowski_interval(const SpacetimePoint& p, const SpacetimePoint& q) {
  const double dt = p[0] - q[0];
  const double dx = p[1] - q[1];
  const double dy = p[2] - q[2];
  const double dz = p[3] - q[3];
  return -dt * dt + dx * dx + dy * dy + dz * dz;
}

/// Synge world function, half the squared interval.
inline double synge(const SpacetimePoint& p, const SpacetimePoint& q) {
  return 0.5 * minkowski_interval(p, q);
}

/// v_mu x^mu, no metric involved.
inline double pairing(const FourCovector& v, const SpacetimePoint& x) {
  return v[0] * x[0] + v[1] * x[1] + v[2] * x[2] + v[3] * x[3];
}

/// a_mu C^{mu nu} b_nu.
inline double contract(const FourCovector& a, const Mat4& c, const FourCovector& b) {
  double s = 0.0;
  for (std::size_t m = 0; m < 4; ++m) {
    if (a[m] == 0.0) continue;
    double row = 0.0;
    for (std::size_t n = 0; n < 4; ++n) row += c[m][n] * b[n];
    s += a[m] * row;
  }
  return s;
}

/// eta^{mu nu} as a contraction matrix.
inline Mat4 eta_matrix() {
  Mat4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = kEta[i];
  return m;
}

inline Mat4 identity_matrix() {
  Mat4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline bool is_symmetric(const Mat4& c, double tol = 0.0) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (std::abs(c[i][j] - c[j][i]) > tol) return false;
  return true;
}

/// u^mu eta_{mu nu} u^nu.
inline double norm_sq(const FourVector& u) {
  return -u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3];
}

/// Throws unless u is a unit timelike vector (u.eta.u = -1 within 1e-12).
inline void require_unit_timelike(const FourVector& u) {
  if (!is_finite(u.coords)) throw PreconditionError("Krein vector has non-finite entries");
  const double n = norm_sq(u);
  if (std::abs(n + 1.0) > 1e-12)
    throw PreconditionError("Krein vector must satisfy u.eta.u = -1, got " + std::to_string(n));
}

/// eta^{mu nu} + 2 u^mu u^nu, positive definite for unit timelike u.
inline Mat4 krein_matrix(const FourVector& u) {
  require_unit_timelike(u);
  Mat4 m = eta_matrix();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] += 2.0 * u[i] * u[j];
  return m;
}

/// Lowers the index of u: u_mu = eta_{mu nu} u^nu.
inline FourCovector lower(const FourVector& u) {
  return {{kEta[0] * u[0], kEta[1] * u[1], kEta[2] * u[2], kEta[3] * u[3]}};
}

/// Unit timelike vector boosted with rapidity `beta` along spatial axis `axis` (1..3).
inline FourVector boosted_observer(double beta, std::size_t axis = 1) {
  if (axis < 1 || axis > 3) throw PreconditionError("boost axis must be 1, 2 or 3");
  FourVector u{};
  u[0] = std::cosh(beta);
  u[axis] = std::sinh(beta);
  return u;
}

/// Orthonormal Lorentzian frame e^{(a)}_mu, a = 0..3.
///
/// The frame index carries the same signature weights as spacetime, so
/// orthonormality reads e^{(a)}_mu eta^{mu nu} e^{(b)}_nu = eta^{ab}.
class Frame {
 public:
  Frame() {
    for (std::size_t a = 0; a < 4; ++a) e_[a][a] = 1.0;
  }

  explicit Frame(const std::array<FourCovector, 4>& e, double tol = 1e-12) : e_{} {
    for (std::size_t a = 0; a < 4; ++a) e_[a] = e[a].comps;
    const Mat4 eta = eta_matrix();
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) {
        const double g = contract(e[a], eta, e[b]);
        const double want = a == b ? kEta[a] : 0.0;
        if (std::abs(g - want) > tol)
          throw PreconditionError("frame is not orthonormal");
      }
  }

  /// Frame obtained by boosting the coordinate frame with rapidity beta.
  static Frame boosted(double beta, std::size_t axis = 1) {
    std::array<FourCovector, 4> e{};
    const double ch = std::cosh(beta), sh = std::sinh(beta);
    for (std::size_t a = 0; a < 4; ++a) e[a][a] = 1.0;
    e[0][0] = ch;
    e[0][axis] = sh;
    e[axis][0] = sh;
    e[axis][axis] = ch;
    return Frame(e);
  }

  FourCovector operator[](std::size_t a) const { return {e_[a]}; }

  /// eta_ab, the signature weight of frame leg a.
  static double weight(std::size_t a) { return kEta[a]; }

  /// sum_ab eta_ab e^{(a)}_mu e^{(b)}_nu C^{mu nu}.
  double trace_with(const Mat4& c) const {
    double s = 0.0;
    for (std::size_t a = 0; a < 4; ++a) s += weight(a) * contract((*this)[a], c, (*this)[a]);
    return s;
  }

 private:
  std::array<Vec4, 4> e_{};
};

/// Planck length and the linked coupling kappa^2 = 16 pi l^2 (c = hbar = 1).
class PhysicalConstants {
 public:
  PhysicalConstants() = default;
  explicit PhysicalConstants(double planck_length) : planck_length_(planck_length) {
    if (!(planck_length >= 0.0) || !std::isfinite(planck_length))
      throw PreconditionError("planck_length must be finite and >= 0");
  }

  static PhysicalConstants from_kappa_sq(double kappa_sq) {
    if (!(kappa_sq >= 0.0) || !std::isfinite(kappa_sq))
      throw PreconditionError("kappa^2 must be finite and >= 0");
    return PhysicalConstants(std::sqrt(kappa_sq / (16.0 * std::numbers::pi)));
  }

  double planck_length() const { return planck_length_; }
  double kappa_sq() const { return 16.0 * std::numbers::pi * planck_length_ * planck_length_; }

 private:
  double planck_length_ = 1.0;
};

}  // namespace ncst

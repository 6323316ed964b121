// Test-function space: normalized Gaussian bumps and covector-weighted
// smearings f_(mu)(x) = sum_k weight_k v_k,mu chi_k(x).
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"

#include "ncst/core.hpp"

namespace ncst {

/// chi(x) = (a/pi)^2 exp(-a sum_mu (x^mu - c^mu)^2), unit mean.
///
/// The Euclidean sum gives every coordinate variance 1/(2a).
struct GaussianBump {
  SpacetimePoint center{};
  double width = 1.0;

  GaussianBump() = default;
  GaussianBump(SpacetimePoint c, double a) : center(c), width(a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw PreconditionError("bump width must be > 0");
    if (!is_finite(c.coords)) throw PreconditionError("bump center must be finite");
  }

  double normalization() const { return (width / std::numbers::pi) * (width / std::numbers::pi); }

  double operator()(const SpacetimePoint& x) const {
    double r2 = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double d = x[i] - center[i];
      r2 += d * d;
    }
    return normalization() * std::exp(-width * r2);
  }

  /// Per-coordinate standard deviation.
  double sigma() const { return std::sqrt(0.5 / width); }

  friend auto operator<=>(const GaussianBump&, const GaussianBump&) = default;
  friend bool operator==(const GaussianBump&, const GaussianBump&) = default;
};

struct SmearingTerm {
  FourCovector v{};
  GaussianBump bump{};
  double weight = 1.0;

  friend auto operator<=>(const SmearingTerm&, const SmearingTerm&) = default;
  friend bool operator==(const SmearingTerm&, const SmearingTerm&) = default;
};

/// Component-wise integral f̄_mu.
using MeanVector = FourCovector;

/// Finite linear combination of covector-weighted Gaussian bumps.
class VectorSmearing {
 public:
  VectorSmearing() = default;
  explicit VectorSmearing(std::vector<SmearingTerm> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_)
      if (!is_finite(t.v.comps) || !std::isfinite(t.weight))
        throw PreconditionError("smearing term has non-finite entries");
  }

  static VectorSmearing single(const FourCovector& v, const GaussianBump& b, double w = 1.0) {
    return VectorSmearing({{v, b, w}});
  }

  const std::vector<SmearingTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Merges terms sharing a bump into one term (weight 1, summed covector),
  /// drops zero covectors and sorts by (center, width). Exact arithmetic only.
  VectorSmearing canonical() const {
    std::vector<SmearingTerm> sorted = terms_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const SmearingTerm& a, const SmearingTerm& b) { return a.bump < b.bump; });
    std::vector<SmearingTerm> out;
    for (const auto& t : sorted) {
      const FourCovector wv = t.weight * t.v;
      if (!out.empty() && out.back().bump == t.bump)
        out.back().v += wv;
      else
        out.push_back({wv, t.bump, 1.0});
    }
    std::erase_if(out, [](const SmearingTerm& t) { return t.v.is_zero(); });
    VectorSmearing r;
    r.terms_ = std::move(out);
    return r;
  }

  bool is_zero() const { return canonical().empty(); }

  VectorSmearing& operator+=(const VectorSmearing& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
  }
  friend VectorSmearing operator+(VectorSmearing a, const VectorSmearing& b) { return a += b; }
  friend VectorSmearing operator*(double s, VectorSmearing a) {
    for (auto& t : a.terms_) t.weight *= s;
    return a;
  }
  friend VectorSmearing operator-(const VectorSmearing& a) { return -1.0 * a; }
  friend VectorSmearing operator-(const VectorSmearing& a, const VectorSmearing& b) {
    return a + (-b);
  }

  /// Ordering on canonical forms, used as a map key.
  friend auto operator<=>(const VectorSmearing& a, const VectorSmearing& b) {
    return a.terms_ <=> b.terms_;
  }
  friend bool operator==(const VectorSmearing& a, const VectorSmearing& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::vector<SmearingTerm> terms_;
};

/// Scalar smearing sum_k coef_k chi_k(x).
struct ScalarTerm {
  double coef = 0.0;
  GaussianBump bump{};
};
using ScalarSmearing = std::vector<ScalarTerm>;

inline FourCovector evaluate(const VectorSmearing& f, const SpacetimePoint& x) {
  FourCovector out{};
  for (const auto& t : f.terms()) out += (t.weight * t.bump(x)) * t.v;
  return out;
}

/// Exact: every normalized bump integrates to one.
inline MeanVector mean(const VectorSmearing& f) {
  MeanVector m{};
  for (const auto& t : f.terms()) m += t.weight * t.v;
  return m;
}

/// (P_psi f)_mu = f_mu - f̄_mu psi. Result has exactly zero mean.
inline VectorSmearing project_psi(const VectorSmearing& f, const GaussianBump& psi) {
  const MeanVector m = mean(f);
  VectorSmearing out = f;
  if (!m.is_zero()) out += VectorSmearing::single(-m, psi);
  return out.canonical();
}

/// f^{(a)}_mu = e^{(a)}_mu chi, a = 0..3.
inline std::array<VectorSmearing, 4> frame_smearings(const GaussianBump& chi, const Frame& frame) {
  std::array<VectorSmearing, 4> out;
  for (std::size_t a = 0; a < 4; ++a) out[a] = VectorSmearing::single(frame[a], chi);
  return out;
}

/// mu_1(f) = ∫ x^mu f_(mu) d^4x; a Gaussian's first moment is its center.
inline double moment1(const VectorSmearing& f) {
  double s = 0.0;
  for (const auto& t : f.terms()) s += t.weight * pairing(t.v, t.bump.center);
  return s;
}

/// Scalar component f_(mu).
inline ScalarSmearing component(const VectorSmearing& f, std::size_t mu) {
  ScalarSmearing out;
  for (const auto& t : f.terms())
    if (t.v[mu] != 0.0) out.push_back({t.weight * t.v[mu], t.bump});
  return out;
}

/// a h1 + b h2, with terms on identical bumps merged.
inline ScalarSmearing combine(const ScalarSmearing& h1, double a, const ScalarSmearing& h2, double b) {
  ScalarSmearing all;
  for (const auto& t : h1) all.push_back({a * t.coef, t.bump});
  for (const auto& t : h2) all.push_back({b * t.coef, t.bump});
  std::stable_sort(all.begin(), all.end(),
                   [](const ScalarTerm& x, const ScalarTerm& y) { return x.bump < y.bump; });
  ScalarSmearing out;
  for (const auto& t : all) {
    if (!out.empty() && out.back().bump == t.bump)
      out.back().coef += t.coef;
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const ScalarTerm& t) { return t.coef == 0.0; });
  return out;
}

inline double scalar_mean(const ScalarSmearing& h) {
  double s = 0.0;
  for (const auto& t : h) s += t.coef;
  return s;
}

// JSON: [{"v": [..4], "center": [..4], "width": a, "weight": w}, ...]

inline void to_json(nlohmann::json& j, const SmearingTerm& t) {
  j = nlohmann::json{{"v", t.v.comps}, {"center", t.bump.center.coords},
                     {"width", t.bump.width}, {"weight", t.weight}};
}

inline void from_json(const nlohmann::json& j, SmearingTerm& t) {
  const auto v = j.at("v").get<std::vector<double>>();
  const auto c = j.at("center").get<std::vector<double>>();
  if (v.size() != 4 || c.size() != 4)
    throw PreconditionError("smearing term needs 4-component 'v' and 'center'");
  SpacetimePoint center{{c[0], c[1], c[2], c[3]}};
  t.v = FourCovector{{v[0], v[1], v[2], v[3]}};
  t.bump = GaussianBump(center, j.at("width").get<double>());
  t.weight = j.value("weight", 1.0);
}

inline VectorSmearing smearing_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw PreconditionError("smearing document must be a JSON array of terms");
  return VectorSmearing(j.get<std::vector<SmearingTerm>>());
}

inline nlohmann::json smearing_to_json(const VectorSmearing& f) { return f.terms(); }

/// A family is either one smearing (array of terms) or an array of such arrays.
inline std::vector<VectorSmearing> family_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw PreconditionError("family document must be a JSON array");
  if (!j.empty() && j.front().is_array()) {
    std::vector<VectorSmearing> out;
    for (const auto& s : j) out.push_back(smearing_from_json(s));
    return out;
  }
  return {smearing_from_json(j)};
}

inline std::vector<VectorSmearing> load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open smearing file: " + path);
  return family_from_json(nlohmann::json::parse(in));
}

}  // namespace ncst

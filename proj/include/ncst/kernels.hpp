// Pointwise translation-invariant kernels K(x - x').
#pragma once

#include <cmath>
#include <string_view>

#include "ncst/core.hpp"

namespace ncst {

enum class KernelKind { Lightcone, LogAbs, Constant };

inline std::string_view to_string(KernelKind k) {
  switch (k) {
    case KernelKind::Lightcone: return "LIGHTCONE";
    case KernelKind::LogAbs: return "LOGABS";
    case KernelKind::Constant: return "CONSTANT";
  }
  return "?";
}

/// sgn(t - t') Θ[-(x - x')^2]. Null separations and sgn(0) map to 0.
inline int lightcone(const SpacetimePoint& x, const SpacetimePoint& xp) {
  const double s = minkowski_interval(x, xp);
  if (!(s < 0.0)) return 0;
  const double dt = x[0] - xp[0];
  return (dt > 0.0) - (dt < 0.0);
}

/// ln|(x - x')^2|. Throws on exactly null separation, where the kernel has its
/// integrable singularity.
inline double log_abs(const SpacetimePoint& x, const SpacetimePoint& xp) {
  const double s = minkowski_interval(x, xp);
  if (s == 0.0) throw PreconditionError("log_abs evaluated on the light cone");
  return std::log(std::abs(s));
}

inline double kernel_value(KernelKind k, const SpacetimePoint& x, const SpacetimePoint& xp) {
  switch (k) {
    case KernelKind::Lightcone: return lightcone(x, xp);
    case KernelKind::LogAbs: return log_abs(x, xp);
    case KernelKind::Constant: return 1.0;
  }
  return 0.0;
}

}  // namespace ncst

// Walks through the main entry points on a few configurations.
//   ncst_demo [family.json]
#include <cstdio>
#include <exception>

#include "ncst/ncst.hpp"

using namespace ncst;

int main(int argc, char** argv) try {
  Integrator integ;
  const PhysicalConstants k{};  // l = 1, kappa^2 = 16 pi
  const GaussianBump origin(SpacetimePoint{}, 50.0);

  std::printf("%-22s %10s %10s %10s %10s\n", "p", "(p-q)^2", "D", "quantum", "C");
  const SpacetimePoint pts[] = {
      {{1.0, 0.0, 0.0, 0.0}}, {{2.0, 1.0, 0.0, 0.0}}, {{0.0, 2.0, 0.0, 0.0}},
      {{1.05, 1.0, 0.0, 0.0}}, {{-1.0, 0.2, 0.0, 0.0}},
  };
  for (const auto& p : pts) {
    const GaussianBump bp(p, 50.0);
    const DistanceBreakdown d = distance(bp, origin, k, integ);
    const Estimate c = causal(bp, origin, integ);
    char label[64];
    std::snprintf(label, sizeof label, "(%g,%g,%g,%g)", p[0], p[1], p[2], p[3]);
    std::printf("%-22s %10.4f %10.4f %10.4f %10.4f\n", label, d.classical, d.total, d.quantum, c.value);
  }

  // closed form for comparison
  const SpacetimePoint p{{3.0, 0.0, 0.0, 0.0}};
  std::printf("\ncorrected world function at p=(3,0,0,0): %.6f\n", corrected_synge(p, SpacetimePoint{}, k));

  if (argc > 1) {
    const auto family = load_family(argv[1]);
    DMStateParams params;
    params.state_alpha = 0.1;
    params.constants = PhysicalConstants(0.2);
    const GramCheck g = gram_check(family, params, integ);
    std::printf("\nfamily of %zu smearings: min eig N = %.4e (psd %d), M = %.4e (psd %d)\n", family.size(),
                g.n.min_eigenvalue, g.n.is_psd, g.m.min_eigenvalue, g.m.is_psd);
  }
  return 0;
} catch (const std::exception& e) {
  std::fprintf(stderr, "error: %s\n", e.what());
  return 2;
}

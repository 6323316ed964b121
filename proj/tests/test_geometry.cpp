#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ncst/geometry.hpp"

using namespace ncst;

namespace {

SpacetimePoint pt(double t, double x, double y, double z) { return {{t, x, y, z}}; }
constexpr double kOneMinusGamma = 1.0 - std::numbers::egamma;
constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(ClassicalTerm, IsTheIntervalForAnyWidths) {
  EXPECT_EQ(classical_term(GaussianBump(pt(0, 1, 0, 0), 3), GaussianBump(pt(0, 0, 0, 0), 70)), 1.0);
  EXPECT_EQ(classical_term(GaussianBump(pt(2, 0, 0, 0), 3), GaussianBump(pt(0, 0, 0, 0), 3)), -4.0);
}

TEST(Distance, ClassicalAtZeroKappa) {
  Integrator integ;
  const GaussianBump p(pt(0.3, 1.2, -0.4, 0), 5), q(pt(-1, 0, 0.5, 0.2), 40);
  const DistanceBreakdown d = distance(p, q, PhysicalConstants(0.0), integ);
  EXPECT_EQ(d.quantum, 0.0);
  EXPECT_EQ(d.total, minkowski_interval(p.center, q.center));
}

TEST(Distance, SmallSupportLogarithm) {
  // quantum part -> (kappa^2/4pi^2) [2 ln a + 2 ln|(p-q)^2| - 2(1 - gamma)]
  Integrator integ;
  const PhysicalConstants k;
  const double a = 1e4;
  for (const auto& p : {pt(2, 0, 0, 0), pt(0, 2, 0, 0), pt(0.5, 0, 1.5, 0)}) {
    const GaussianBump bp(p, a), bq(pt(0, 0, 0, 0), a);
    const double iv = minkowski_interval(p, SpacetimePoint{});
    const double expect =
        k.kappa_sq() / (4 * kPi * kPi) * (2 * std::log(a) + 2 * std::log(std::abs(iv)) - 2 * kOneMinusGamma);
    const DistanceBreakdown d = distance(bp, bq, k, integ);
    EXPECT_NEAR(d.quantum, expect, 1e-3 * expect);
    EXPECT_EQ(d.classical, iv);
  }
}

TEST(Distance, QuantumPartNonnegative) {
  Integrator integ;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2, 2), w(0.5, 3.0);
  for (int i = 0; i < 20; ++i) {
    const GaussianBump p(pt(u(rng), u(rng), u(rng), u(rng)), std::pow(10.0, w(rng)));
    const GaussianBump q(pt(u(rng), u(rng), u(rng), u(rng)), std::pow(10.0, w(rng)));
    const DistanceBreakdown d = distance(p, q, PhysicalConstants{}, integ);
    EXPECT_GE(d.quantum, -2.0 * d.error);
  }
}

TEST(Distance, AlphaFormApproachesLimit) {
  Integrator integ;
  const GaussianBump p(pt(0.8, 0.3, 0, 0), 6), q(pt(0, 0, 0, 0), 4);
  DMStateParams params;
  params.constants = PhysicalConstants(0.2);
  const double limit = distance(p, q, params.constants, integ).total;
  double prev = 1e300;
  for (double alpha : {1e2, 1e4, 1e6}) {
    params.state_alpha = alpha;
    const double gap = std::abs(distance_alpha(p, q, params, integ).total - limit);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(CorrectedSynge, Examples) {
  const PhysicalConstants k(1.0);
  EXPECT_NEAR(corrected_synge(pt(0, std::sqrt(2.0), 0, 0), SpacetimePoint{}, k), 2.0, 1e-14);
  const double e = std::numbers::e;
  EXPECT_NEAR(corrected_synge(pt(0, std::sqrt(2 * e), 0, 0), SpacetimePoint{}, k), 2 * e + 8 / kPi, 1e-13);
  EXPECT_NEAR(corrected_synge(pt(std::sqrt(2 * e), 0, 0, 0), SpacetimePoint{}, k), -2 * e + 8 / kPi, 1e-13);
  EXPECT_EQ(corrected_synge(pt(0, 3, 0, 0), SpacetimePoint{}, PhysicalConstants(0.0)), 9.0);
  EXPECT_THROW(corrected_synge(pt(1, 1, 0, 0), SpacetimePoint{}, k), PreconditionError);
  EXPECT_THROW(corrected_synge(SpacetimePoint{}, SpacetimePoint{}, k), PreconditionError);
}

TEST(Causal, SharpSeparations) {
  Integrator integ;
  const double a = 1e4;
  const GaussianBump o(pt(0, 0, 0, 0), a);
  EXPECT_NEAR(causal(GaussianBump(pt(1, 0, 0, 0), a), o, integ).value, 1.0, 1e-6);
  EXPECT_NEAR(causal(GaussianBump(pt(-1, 0.5, 0, 0), a), o, integ).value, -1.0, 1e-6);
  EXPECT_NEAR(causal(GaussianBump(pt(0.5, 1, 0, 0), a), o, integ).value, 0.0, 1e-6);
  EXPECT_EQ(causal(o, o, integ).value, 0.0);
}

TEST(Causal, FuzzyNearLightconeMatchesMonteCarlo) {
  Integrator integ;
  const GaussianBump p(pt(1.05, 1, 0, 0), 1e2), q(pt(0, 0, 0, 0), 1e2);
  const Estimate c = causal(p, q, integ);
  EXPECT_GT(c.value, 0.05);
  EXPECT_LT(c.value, 0.95);
  QuadratureConfig cfg;
  cfg.mc_samples = 200000;
  const FourCovector e0{{1, 0, 0, 0}};
  const auto m = mc_oracle(KernelKind::Lightcone, VectorSmearing::single(e0, p), VectorSmearing::single(e0, q),
                           identity_matrix(), cfg);
  EXPECT_LE(std::abs(m.value - c.value), 2.0 * (m.error + c.error));
}

TEST(CausalViaWeyl, ReproducesDirectValue) {
  Integrator integ;
  const GaussianBump p(pt(1.05, 1, 0, 0), 1e2), q(pt(0, 0, 0, 0), 1e2);
  const double direct = causal(p, q, integ).value;
  const DMStateParams params;
  const WeylCausal w = causal_via_weyl(p, q, params, integ);
  EXPECT_NEAR(w.value, direct, 1e-10);
  EXPECT_FALSE(w.branch_cut_suspect);
  EXPECT_TRUE(w.converged);
}

TEST(CausalViaWeyl, IndependentOfKappaAndPsi) {
  Integrator integ;
  const GaussianBump p(pt(0.9, 0.4, 0, 0), 20), q(pt(0, 0, 0.2, 0), 30);
  DMStateParams a;
  DMStateParams b;
  b.constants = PhysicalConstants::from_kappa_sq(1.0);
  b.psi = GaussianBump(pt(3, 1, 0, 0), 0.2);
  b.state_alpha = 5.0;
  EXPECT_NEAR(causal_via_weyl(p, q, a, integ).value, causal_via_weyl(p, q, b, integ).value, 1e-10);
  b.constants = PhysicalConstants(0.0);
  EXPECT_THROW(causal_via_weyl(p, q, b, integ), PreconditionError);
}

TEST(CausalViaWeyl, KreinPairingGivesHalf) {
  Integrator integ;
  const GaussianBump p(pt(0.9, 0.4, 0, 0), 20), q(pt(0, 0, 0.2, 0), 30);
  const DMStateParams params;
  const double std_v = causal_via_weyl(p, q, params, integ, Pairing::Standard).value;
  const double krein_v = causal_via_weyl(p, q, params, integ, Pairing::Krein).value;
  EXPECT_NEAR(krein_v, 0.5 * std_v, 1e-10);
}

TEST(Extrapolation, ExactOnPolynomials) {
  const std::vector<double> x{0.5, 0.25, 0.1, 0.05};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 - 2.0 * v + 0.5 * v * v * v);
  EXPECT_NEAR(extrapolate_to_zero(x, y), 3.0, 1e-13);
  EXPECT_THROW(extrapolate_to_zero({0.1, 0.1}, {1.0, 2.0}), PreconditionError);
  EXPECT_THROW(extrapolate_to_zero({}, {}), PreconditionError);
}

TEST(WidthSweep, CausalLimitTimelike) {
  Integrator integ;
  const WidthSweep ws = width_sweep(pt(1, 0.3, 0, 0), SpacetimePoint{}, {1e2, 1e3, 1e4},
                                    [&](const GaussianBump& p, const GaussianBump& q) { return causal(p, q, integ); });
  ASSERT_EQ(ws.points.size(), 3u);
  EXPECT_EQ(ws.points[2].width, 1e4);
  EXPECT_NEAR(ws.limit, 1.0, 1e-6);
}

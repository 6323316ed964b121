#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "ncst/core.hpp"

using namespace ncst;

namespace {

SpacetimePoint pt(double t, double x, double y, double z) { return {{t, x, y, z}}; }

Eigen::Matrix4d to_eigen(const Mat4& m) {
  Eigen::Matrix4d e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m[i][j];
  return e;
}

}  // namespace

TEST(Interval, SignConventions) {
  EXPECT_EQ(minkowski_interval(pt(1, 0, 0, 0), pt(0, 0, 0, 0)), -1.0);
  EXPECT_EQ(minkowski_interval(pt(0, 1, 0, 0), pt(0, 0, 0, 0)), 1.0);
  EXPECT_EQ(minkowski_interval(pt(1, 1, 0, 0), pt(0, 0, 0, 0)), 0.0);
}

TEST(Interval, SymmetricAndTranslationInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const auto p = pt(u(rng), u(rng), u(rng), u(rng));
    const auto q = pt(u(rng), u(rng), u(rng), u(rng));
    const auto s = pt(u(rng), u(rng), u(rng), u(rng));
    EXPECT_EQ(minkowski_interval(p, q), minkowski_interval(q, p));
    EXPECT_NEAR(minkowski_interval(p + s, q + s), minkowski_interval(p, q), 1e-11);
  }
}

TEST(Synge, HalfTheInterval) {
  EXPECT_EQ(synge(pt(2, 0, 0, 0), pt(0, 0, 0, 0)), -2.0);
  EXPECT_EQ(synge(pt(1, 2, 3, 4), pt(1, 2, 3, 4)), 0.0);
  EXPECT_EQ(synge(pt(0, 2, 0, 0), pt(0, 0, 0, 0)), 2.0);
}

TEST(Krein, RestFrameIsIdentity) {
  const Mat4 k = krein_matrix(FourVector{{1, 0, 0, 0}});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(k[i][j], i == j ? 1.0 : 0.0);
}

TEST(Krein, BoostedIsPositiveDefinite) {
  const Mat4 k = krein_matrix(boosted_observer(1.0));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(to_eigen(k));
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(Krein, MetricSandwichReturnsEta) {
  // (eta + 2uu) eta (eta + 2uu) = eta, the matrix form of J^2 = 1
  for (double beta : {0.0, 0.3, 1.0, 2.5}) {
    const Eigen::Matrix4d k = to_eigen(krein_matrix(boosted_observer(beta, 2)));
    const Eigen::Matrix4d eta = to_eigen(eta_matrix());
    EXPECT_LT((k * eta * k - eta).cwiseAbs().maxCoeff(), 1e-10 * std::cosh(beta) * std::cosh(beta));
  }
}

TEST(Krein, DominatesIndefiniteForm) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  const Mat4 k = krein_matrix(boosted_observer(0.7, 3));
  const Mat4 eta = eta_matrix();
  for (int i = 0; i < 1000; ++i) {
    const FourCovector a{{nd(rng), nd(rng), nd(rng), nd(rng)}};
    EXPECT_GE(contract(a, k, a), std::abs(contract(a, eta, a)) - 1e-12);
  }
}

TEST(Krein, RejectsNonUnitVectors) {
  EXPECT_THROW(krein_matrix(FourVector{{2, 0, 0, 0}}), PreconditionError);
  EXPECT_THROW(krein_matrix(FourVector{{0, 1, 0, 0}}), PreconditionError);
  EXPECT_THROW(krein_matrix(FourVector{{1, 1, 0, 0}}), PreconditionError);
}

TEST(Frame, DefaultTraceIsFour) {
  const Frame f;
  EXPECT_EQ(f.trace_with(eta_matrix()), 4.0);
}

TEST(Frame, BoostedFrameIsOrthonormal) {
  const Frame f = Frame::boosted(0.8, 1);
  EXPECT_NEAR(f.trace_with(eta_matrix()), 4.0, 1e-12);
  EXPECT_EQ(f[0][0], std::cosh(0.8));
}

TEST(Frame, RejectsNonOrthonormal) {
  std::array<FourCovector, 4> e{};
  for (std::size_t a = 0; a < 4; ++a) e[a][a] = 1.0;
  e[1][2] = 0.5;
  EXPECT_THROW(Frame{e}, PreconditionError);
}

TEST(Constants, KappaLinkedToPlanckLength) {
  EXPECT_DOUBLE_EQ(PhysicalConstants{}.kappa_sq(), 16.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(PhysicalConstants(0.5).kappa_sq(), 4.0 * std::numbers::pi);
  EXPECT_NEAR(PhysicalConstants::from_kappa_sq(1.0).kappa_sq(), 1.0, 1e-15);
  EXPECT_EQ(PhysicalConstants::from_kappa_sq(0.0).kappa_sq(), 0.0);
  EXPECT_THROW(PhysicalConstants(-1.0), PreconditionError);
}

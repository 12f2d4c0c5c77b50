// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thinspec/bessel.hpp"
#include "thinspec/convergence.hpp"
#include "thinspec/disk.hpp"

namespace thinspec
{
namespace
{

using testing::golden;
using testing::rel;

TEST(DiskDirichlet, EigenvaluesAndScaling)
{
  EXPECT_NEAR(disk_dirichlet_eigen(1.0, 0, 1), golden("lambda0"), 1e-12);
  EXPECT_NEAR(disk_dirichlet_eigen(2.0, 0, 1), golden("lambda0") / 4.0, 1e-12);
  EXPECT_NEAR(disk_dirichlet_eigen(1.0, 1, 1), std::pow(golden("j11"), 2), 1e-11);
}

TEST(DiskV0, NormalizedWithAnalyticFlux)
{
  // ∫ v0² over the disk by composite Simpson in r
  const int n = 2000;
  double integral = 0.0;
  for (int i = 0; i <= n; ++i)
  {
    const double r = static_cast<double>(i) / n;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    integral += w * std::pow(disk_v0(1.0, r), 2) * r;
  }
  integral *= 2.0 * std::numbers::pi / (3.0 * n);
  EXPECT_NEAR(integral, 1.0, 1e-10);
  EXPECT_GT(disk_v0(1.0, 0.0), 0.0);
  EXPECT_NEAR(disk_v0(1.0, 1.0), 0.0, 1e-14);
}

TEST(DiskCoefficients, MatchGoldens)
{
  const DiskCoefficients c = disk_asymptotic_coeffs(1.0);
  EXPECT_NEAR(c.lambda0, golden("lambda0"), 1e-12);
  EXPECT_NEAR(c.lambda1, golden("lambda1"), 1e-10);
  EXPECT_NEAR(c.lambda1, 2.0 * c.lambda0, 1e-10);
  EXPECT_NEAR(c.lambda2, golden("lambda2"), 1e-8);
  // independent collocation oracle at two resolutions
  EXPECT_NEAR(golden("lambda2_collocation_48"), golden("lambda2_collocation_64"), 1e-8);
  EXPECT_NEAR(c.lambda2, golden("lambda2_collocation_64"), 2e-8);
  EXPECT_NEAR(c.flux0, golden("j01") / std::sqrt(std::numbers::pi), 1e-10);
}

TEST(DiskCoefficients, DimensionalScaling)
{
  const DiskCoefficients a = disk_asymptotic_coeffs(1.0), b = disk_asymptotic_coeffs(2.0);
  EXPECT_NEAR(b.lambda0 / a.lambda0, 0.25, 1e-8 * 0.25);
  EXPECT_NEAR(b.lambda1 / a.lambda1, 0.125, 1e-8 * 0.125);
  EXPECT_NEAR(b.lambda2 / a.lambda2, 0.0625, 1e-8 * 0.0625);
}

TEST(RadialCorrector, OrthogonalAndSelfConvergent)
{
  const RadialCorrector coarse = radial_corrector(1.0, 2000), fine = radial_corrector(1.0, 4000);
  EXPECT_LE(std::abs(coarse.orthogonality), 1e-10);
  EXPECT_LE(std::abs(coarse.flux - fine.flux), 1e-8);
  // boundary datum −g ∂v0/∂ν
  EXPECT_NEAR(coarse.v1.value(1.0), -golden("j01") / std::sqrt(std::numbers::pi), 1e-10);
}

TEST(RadialCorrector, ZeroThicknessGivesZeroField)
{
  const RadialCorrector z = radial_corrector(1.0, 400, 0.0);
  for (double r : {0.0, 0.25, 0.5, 0.99, 1.0})
    EXPECT_LE(std::abs(z.v1.value(r)), 1e-14);
  EXPECT_LE(std::abs(z.flux), 1e-14);
  const DiskCoefficients c = disk_asymptotic_coeffs(1.0, 400, 0.0);
  EXPECT_EQ(c.lambda1, 0.0);
  EXPECT_EQ(c.lambda2, 0.0);
}

TEST(TransmissionDeterminant, VanishingLayerRecoversDirichletZero)
{
  const DiskRoot root = disk_first_te(DiskProblem{1.0, 1e-6, 0.48, 0});
  EXPECT_LE(std::abs(root.k - golden("j01")), 1e-4);
  EXPECT_EQ(root.mode, 0);
}

TEST(TransmissionDeterminant, NonzeroAwayFromRoots)
{
  const DiskProblem p{1.0, 0.01, 0.48, 0};
  EXPECT_GT(std::abs(transmission_determinant(p, 2.0)), 1e-6);
  EXPECT_CODE(DiskProblem({1.0, 1.5, 0.48, 0}).validate(), ErrorCode::InvalidArgument);
}

TEST(DiskFirstTe, SandwichAndMonotonicity)
{
  const double j = golden("j01");
  const double l0 = golden("lambda0");
  double previous = l0;
  for (double d : {0.005, 0.01, 0.02, 0.04})
  {
    const DiskRoot r = disk_first_te(DiskProblem{1.0, d, 0.48, 0});
    EXPECT_GE(r.lambda, l0);
    EXPECT_LE(r.lambda, std::pow(j / (1.0 - d), 2));
    EXPECT_GT(r.lambda, previous);
    previous = r.lambda;
  }
  const DiskRoot thin = disk_first_te(DiskProblem{1.0, 0.005, 0.48, 0});
  EXPECT_LE(thin.lambda, 5.8415);
}

TEST(DiskFirstTe, FirstOrderRemainderSlope)
{
  const DiskCoefficients c = disk_asymptotic_coeffs(1.0);
  std::vector<double> ds = {0.04, 0.02, 0.01, 0.005}, e1, e3;
  for (double d : ds)
  {
    const double lam = disk_first_te(DiskProblem{1.0, d, 0.48, 0}).lambda;
    e1.push_back(std::abs(lam - c.lambda0 - d * c.lambda1));
    e3.push_back(std::abs(lam - c.lambda0 - d * c.lambda1 - d * d * c.lambda2) / (d * d * d));
  }
  for (std::size_t i = 1; i < e1.size(); ++i)
    EXPECT_LT(e1[i], e1[i - 1]);
  EXPECT_GE(fit_order(ds, e1).slope, 1.9);
  // δ³-scaled remainder stays bounded
  for (double v : e3)
    EXPECT_LT(v, 2.0 * e3.front());
}

TEST(DiskFirstTe, MatchesFrozenValues)
{
  EXPECT_NEAR(disk_first_te(DiskProblem{1.0, 0.01, 0.48, 0}).lambda, 5.90059587457695, 1e-10);
  EXPECT_NEAR(disk_first_te(DiskProblem{1.0, 0.04, 0.48, 0}).lambda, 6.27425233420436, 1e-10);
}

} // namespace
} // namespace thinspec

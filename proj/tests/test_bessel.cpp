// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thinspec/bessel.hpp"

namespace thinspec
{
namespace
{

using testing::golden;

TEST(BesselJ, ValuesAtOrigin)
{
  const BesselValue j0 = bessel_j(0, 0.0);
  EXPECT_DOUBLE_EQ(j0.value, 1.0);
  EXPECT_DOUBLE_EQ(j0.derivative, 0.0);
  EXPECT_DOUBLE_EQ(bessel_j(1, 0.0).value, 0.0);
  EXPECT_NEAR(bessel_j(1, 0.0).derivative, 0.5, 1e-15);
}

TEST(BesselJ, VanishesAtFirstZero)
{
  EXPECT_LE(std::abs(bessel_j(0, 2.404825557695773).value), 1e-12);
  EXPECT_LE(std::abs(bessel_j(1, 3.831705970207512).value), 1e-12);
}

TEST(BesselJ, SeriesAgreesWithRecurrence)
{
  for (double x : {0.3, 1.7, 2.5, 5.0, 9.0})
  {
    const std::vector<double> rec = bessel_j_recurrence(6, x);
    for (int m = 0; m <= 6; ++m)
      EXPECT_NEAR(bessel_j_series(m, x), rec[m], 1e-13) << "m=" << m << " x=" << x;
  }
}

TEST(BesselJ, ReferenceValues)
{
  // 30-digit reference values rounded to 17
  EXPECT_NEAR(bessel_j(0, 1.0).value, 0.76519768655796655, 1e-15);
  EXPECT_NEAR(bessel_j(1, 10.0).value, 0.043472746168861437, 1e-15);
  EXPECT_NEAR(bessel_j(3, 50.0).value, 0.092734804061634432, 1e-14);
  EXPECT_NEAR(bessel_y(0, 1.0).value, 0.088256964215676958, 1e-15);
  EXPECT_NEAR(bessel_y(2, 30.0).value, 0.12292410306411384, 1e-14);
}

TEST(BesselY, NearOriginWarnsButStaysFinite)
{
  const BesselValue y = bessel_y(0, 1e-10);
  EXPECT_TRUE(std::isfinite(y.value));
  EXPECT_LT(y.value, -10.0);
  EXPECT_TRUE(y.magnitude_warning);
  EXPECT_FALSE(bessel_y(0, 0.5).magnitude_warning);
}

TEST(BesselY, FirstZero)
{
  EXPECT_LE(std::abs(bessel_y(0, 0.8935769662791675).value), 1e-10);
  EXPECT_NEAR(bessel_y_zero(0, 1), golden("y01"), 1e-13);
}

TEST(Bessel, WronskianOnLogGrid)
{
  double worst = 0.0;
  for (int i = 0; i < 100; ++i)
  {
    const double x = 0.1 * std::pow(1000.0, i / 99.0);
    for (int m = 0; m <= 6; ++m)
    {
      const BesselValue j = bessel_j(m, x), y = bessel_y(m, x);
      const double w = j.value * y.derivative - j.derivative * y.value;
      const double exact = 2.0 / (std::numbers::pi * x);
      worst = std::max(worst, std::abs(w - exact) / exact);
    }
  }
  EXPECT_LE(worst, 1e-10);
  const BesselValue j = bessel_j(0, 1.0), y = bessel_y(0, 1.0);
  EXPECT_NEAR(j.value * y.derivative - j.derivative * y.value, 2.0 / std::numbers::pi, 1e-10);
}

TEST(BesselZeros, TwoMethodsAgreeWithGoldens)
{
  for (ZeroMethod method : {ZeroMethod::Recurrence, ZeroMethod::Series})
  {
    EXPECT_NEAR(bessel_j_zero(0, 1, method), golden("j01"), 1e-12);
    EXPECT_NEAR(bessel_j_zero(1, 1, method), golden("j11"), 1e-12);
  }
  EXPECT_NEAR(bessel_j_zero(0, 2), 5.520078110286311, 1e-12);
  EXPECT_NEAR(bessel_j_zero(2, 1), 5.135622301840683, 1e-12);
}

TEST(Bessel, DomainErrors)
{
  EXPECT_CODE(bessel_j(0, -1.0), ErrorCode::DomainError);
  EXPECT_CODE(bessel_y(0, 0.0), ErrorCode::DomainError);
  EXPECT_CODE(bessel_j(500, 1.0), ErrorCode::DomainError);
  EXPECT_CODE(bessel_j_zero(0, 0), ErrorCode::InvalidArgument);
}

} // namespace
} // namespace thinspec

// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thinspec/convergence.hpp"

namespace thinspec
{
namespace
{

TEST(FitOrder, ExactPowerLaw)
{
  std::vector<double> x = {0.04, 0.02, 0.01, 0.005}, e;
  for (double d : x)
    e.push_back(7.0 * d * d * d);
  const OrderFit f = fit_order(x, e);
  EXPECT_NEAR(f.slope, 3.0, 1e-10);
  EXPECT_NEAR(f.intercept, std::log(7.0), 1e-9);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_EQ(f.used, 4u);
  EXPECT_TRUE(f.notes.empty());
}

TEST(FitOrder, DominantTerm)
{
  std::vector<double> x = {0.04, 0.02, 0.01, 0.005}, e;
  for (double d : x)
    e.push_back(2.0 * d + 5.0 * d * d);
  const double slope = fit_order(x, e).slope;
  EXPECT_GE(slope, 0.95);
  EXPECT_LE(slope, 1.05);
}

TEST(FitOrder, ZeroRowsDroppedWithNote)
{
  const OrderFit f = fit_order({0.04, 0.02, 0.01, 0.005}, {0.0016, 0.0004, 0.0, 0.000025});
  EXPECT_EQ(f.used, 3u);
  EXPECT_EQ(f.notes.size(), 1u);
  EXPECT_NEAR(f.slope, 2.0, 1e-10);
  EXPECT_CODE(fit_order({0.04, 0.02, 0.01}, {1.0, 0.0, 0.5}), ErrorCode::InsufficientData);
  EXPECT_CODE(fit_order({0.04, 0.02}, {1.0, 0.5}), ErrorCode::InsufficientData);
}

TEST(Richardson, RecoversQuadraticLimit)
{
  const auto f = [](double h) { return 3.0 + 0.7 * h * h; };
  EXPECT_NEAR(richardson_limit(f(0.1), f(0.05), 2.0, 2.0), 3.0, 1e-14);
  EXPECT_NEAR(richardson_error(f(0.1), f(0.05), 2.0, 2.0), 0.7 * 0.0025, 1e-14);
  const auto g = [](double h) { return 1.0 + h * h + 0.0 * h; };
  EXPECT_NEAR(observed_order(g(0.08), g(0.04), g(0.02), 2.0), 2.0, 1e-10);
}

TEST(Thickness, DiskRoundTripAndGuards)
{
  EXPECT_EQ(estimate_thickness(5.0, 5.0, 10.0, 15.0).first_order, 0.0);
  EXPECT_EQ(*estimate_thickness(5.0, 5.0, 10.0, 15.0).quadratic, 0.0);
  EXPECT_CODE(estimate_thickness(4.9, 5.0, 10.0, 15.0), ErrorCode::BelowLambda0);
  EXPECT_CODE(estimate_thickness(5.1, 5.0, 0.0, 15.0), ErrorCode::InvalidArgument);
  // exact quadratic data
  const double d = 0.03, l0 = 2.0, l1 = 4.0, l2 = 6.0;
  const ThicknessEstimate t = estimate_thickness(l0 + l1 * d + l2 * d * d, l0, l1, l2);
  ASSERT_TRUE(t.quadratic.has_value());
  EXPECT_NEAR(*t.quadratic, d, 1e-14);
  EXPECT_GT(t.first_order, d);
  // no real root: λ₂ strongly negative
  EXPECT_FALSE(estimate_thickness(10.0, 1.0, 1.0, -1.0).quadratic.has_value());
}

} // namespace
} // namespace thinspec

// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thinspec/geometry.hpp"

namespace thinspec
{
namespace
{

using std::numbers::pi;

LayerConfig uniform(double delta0, double n = 0.5)
{
  return LayerConfig(delta0, ThicknessProfile::constant(1.0), RefractiveIndex::constant(n));
}

TEST(Curvature, CircleAndEllipseValues)
{
  const BoundaryCurve unit = BoundaryCurve::circle(1.0);
  const BoundaryCurve two = BoundaryCurve::circle(2.0);
  for (double s : {0.0, 0.7, 3.1, 6.0})
  {
    EXPECT_NEAR(unit.curvature(s), 1.0, 1e-12);
    EXPECT_NEAR(two.curvature(2.0 * s), 0.5, 1e-12);
  }
  const BoundaryCurve ellipse = BoundaryCurve::ellipse(2.0, 1.0);
  // the vertex (2, 0) where κ = a/b²
  double best = 0.0, best_x = -1.0;
  for (int i = 0; i < 4000; ++i)
  {
    const double s = ellipse.length() * i / 4000.0;
    if (ellipse.position(s).x() > best_x)
    {
      best_x = ellipse.position(s).x();
      best = s;
    }
  }
  EXPECT_NEAR(ellipse.position(best).x(), 2.0, 1e-6);
  EXPECT_NEAR(ellipse.curvature(best), 2.0, 1e-4);
}

TEST(Curvature, FrenetConventionIsConvexPositive)
{
  for (const BoundaryCurve &c : {BoundaryCurve::circle(1.0), BoundaryCurve::ellipse(1.3, 1.0),
                                 BoundaryCurve::fourier({0.0, 0.0, 0.1, 0.05})})
  {
    for (double frac : {0.05, 0.3, 0.61, 0.9})
    {
      const double s = frac * c.length(), d = 1e-5;
      const Eigen::Vector2d dt = (c.tangent(s + d) - c.tangent(s - d)) / (2.0 * d);
      const Eigen::Vector2d expected = c.curvature(s) * c.inward_normal(s);
      EXPECT_NEAR((dt - expected).norm(), 0.0, 1e-6) << c.describe() << " s=" << s;
      // unit speed
      const Eigen::Vector2d dx = (c.position(s + d) - c.position(s - d)) / (2.0 * d);
      EXPECT_NEAR(dx.norm(), 1.0, 1e-8);
    }
  }
}

TEST(Curvature, MatchesParametricFormulaOnRandomPoints)
{
  std::mt19937_64 rng(7);
  const auto check = [&](std::shared_ptr<const ParametricCurve> raw) {
    const BoundaryCurve c(raw);
    std::uniform_real_distribution<double> pick(0.0, c.length());
    for (int i = 0; i < 100; ++i)
    {
      const double s = pick(rng);
      const double t = c.raw_parameter(s);
      const Point d1 = raw->d1(t), d2 = raw->d2(t);
      const double formula = (d1.x() * d2.y() - d1.y() * d2.x()) / std::pow(d1.norm(), 3);
      // counter-clockwise raw curves are convex-positive already
      EXPECT_LE(std::abs(std::abs(c.curvature(s)) - std::abs(formula)), 1e-6 * std::abs(formula) + 1e-12);
      EXPECT_GT(c.curvature(s) * formula, 0.0);
    }
  };
  check(std::make_shared<EllipseCurve>(1.3, 1.0));
  check(std::make_shared<FourierCurve>(std::vector<double>{0.0, 0.0, 0.08, 0.0, 0.03}));
}

TEST(Curvature, OrientationIsNormalized)
{
  const auto base = std::make_shared<EllipseCurve>(1.3, 1.0);
  const BoundaryCurve forward(base);
  const BoundaryCurve backward(std::make_shared<ReversedCurve>(base));
  EXPECT_NEAR(backward.length(), forward.length(), 1e-10);
  for (int i = 0; i < 20; ++i)
  {
    const double s = forward.length() * i / 20.0;
    EXPECT_GT(backward.curvature(s), 0.0);
  }
  EXPECT_GT(BoundaryCurve(std::make_shared<ReversedCurve>(std::make_shared<CircleCurve>(1.0))).curvature(0.3), 0.999);
}

TEST(Curve, CircleLengthAndArea)
{
  const BoundaryCurve c = BoundaryCurve::circle(1.5);
  EXPECT_NEAR(c.length(), 3.0 * pi, 1e-10);
  EXPECT_NEAR(c.enclosed_area(), pi * 2.25, 1e-10);
  EXPECT_NEAR(c.reach(), 1.5, 1e-8);
}

TEST(Offset, CircleRadiusAndLength)
{
  const BoundaryCurve c = BoundaryCurve::circle(1.0);
  const BoundaryCurve inner = offset_curve(c, uniform(0.1));
  EXPECT_NEAR(inner.length(), 2.0 * pi * 0.9, 1e-8);
  for (int i = 0; i < 16; ++i)
    EXPECT_NEAR(inner.position(inner.length() * i / 16.0).norm(), 0.9, 1e-10);
  EXPECT_NEAR(inner.centroid().norm(), 0.0, 1e-10);
}

TEST(Offset, TooDeep)
{
  EXPECT_CODE(offset_curve(BoundaryCurve::circle(1.0), uniform(1.2)), ErrorCode::OffsetTooDeep);
}

TEST(Offset, EllipseDistanceIsDelta)
{
  const BoundaryCurve ellipse = BoundaryCurve::ellipse(1.3, 1.0);
  const BoundaryCurve inner = offset_curve(ellipse, uniform(0.05));
  // distance from an offset point to the closed-form ellipse, golden section on t
  const auto distance = [](const Point &p) {
    const auto f = [&](double t) { return (Point(1.3 * std::cos(t), std::sin(t)) - p).norm(); };
    double best_t = 0.0, best = 1e300;
    for (int i = 0; i < 2000; ++i)
    {
      const double t = 2.0 * pi * i / 2000.0;
      if (f(t) < best)
      {
        best = f(t);
        best_t = t;
      }
    }
    double a = best_t - 2.0 * pi / 2000.0, b = best_t + 2.0 * pi / 2000.0;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 100; ++it)
    {
      const double c = b - r * (b - a), d = a + r * (b - a);
      if (f(c) < f(d))
        b = d;
      else
        a = c;
    }
    return f(0.5 * (a + b));
  };
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i < 200; ++i)
  {
    const double dist = distance(inner.position(inner.length() * i / 200.0));
    lo = std::min(lo, dist);
    hi = std::max(hi, dist);
  }
  EXPECT_NEAR(lo, 0.05, 1e-8);
  EXPECT_NEAR(hi, 0.05, 1e-8);
}

TEST(Tube, ForwardJacobianAndRoundTrip)
{
  const TubeMap unit = tube_map(BoundaryCurve::circle(1.0));
  EXPECT_NEAR(unit.forward(0.0, 0.1).norm(), 0.9, 1e-12);
  for (double s : {0.0, 1.0, 5.0})
  {
    EXPECT_DOUBLE_EQ(unit.jacobian(s, 0.0), 1.0);
    // J = 1 − ηκ with η measured inward
    EXPECT_NEAR(unit.jacobian(s, 0.2), 0.8, 1e-12);
  }

  std::mt19937_64 rng(11);
  for (const BoundaryCurve &c : {BoundaryCurve::circle(1.0), BoundaryCurve::ellipse(1.3, 1.0),
                                 BoundaryCurve::fourier({0.0, 0.0, 0.1})})
  {
    const TubeMap tube = tube_map(c);
    std::uniform_real_distribution<double> s_pick(0.0, c.length());
    std::uniform_real_distribution<double> eta_pick(-0.9 * tube.reach(), 0.9 * tube.reach());
    for (int i = 0; i < 100; ++i)
    {
      const double s = s_pick(rng), eta = eta_pick(rng);
      const TubeCoordinates back = tube.inverse(tube.forward(s, eta));
      const double ds = std::remainder(back.s - s, c.length());
      EXPECT_NEAR(ds, 0.0, 1e-10) << c.describe();
      EXPECT_NEAR(back.eta, eta, 1e-10) << c.describe();
    }
  }
}

TEST(Layer, Validation)
{
  EXPECT_CODE(LayerConfig(0.0, ThicknessProfile::constant(1.0), RefractiveIndex::constant(0.5)),
              ErrorCode::InvalidLayer);
  EXPECT_CODE(LayerConfig(0.1, ThicknessProfile::constant(0.0), RefractiveIndex::constant(0.5)),
              ErrorCode::InvalidLayer);
  EXPECT_CODE(LayerConfig(0.1, ThicknessProfile::constant(1.0), RefractiveIndex::constant(1.0)),
              ErrorCode::InvalidLayer);
  EXPECT_CODE(LayerConfig(0.1, ThicknessProfile::constant(1.0), RefractiveIndex::across_layer(0.5, 0.0)),
              ErrorCode::InvalidLayer);
  const LayerConfig varying(0.02, ThicknessProfile::fourier(1.0, {0.5}, {}), RefractiveIndex::constant(0.4));
  const BoundaryCurve c = BoundaryCurve::circle(1.0);
  EXPECT_NEAR(varying.max_thickness(c), 0.03, 1e-9);
  EXPECT_NEAR(varying.thickness(c, 0.0), 0.03, 1e-12);
}

} // namespace
} // namespace thinspec

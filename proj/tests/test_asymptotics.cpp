// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thinspec/asymptotics.hpp"
#include "thinspec/convergence.hpp"
#include "thinspec/disk.hpp"
#include "thinspec/mesh.hpp"

namespace thinspec
{
namespace
{

using testing::golden;
using testing::rel;

const ThicknessProfile kUnit = ThicknessProfile::constant(1.0);

// Coefficients on the unit disk at h = 0.02, shared by several tests.
const FemContext &disk_context()
{
  static const FemContext ctx(generate_mesh(BoundaryCurve::circle(1.0), std::nullopt, 0.02));
  return ctx;
}

const AsymptoticCoefficients &disk_coefficients()
{
  static const AsymptoticCoefficients c = compute_coefficients(disk_context(), BoundaryCurve::circle(1.0), kUnit);
  return c;
}

TEST(Lambda0, DiskAndSquare)
{
  const AsymptoticCoefficients &c = disk_coefficients();
  EXPECT_LE(rel(c.lambda0, golden("lambda0")), 0.005);
  EXPECT_GE(c.lambda0, golden("lambda0"));
  EXPECT_NEAR(std::sqrt(c.v0.dot(disk_context().mass * c.v0)), 1.0, 1e-8);
  EXPECT_GT(c.v0[disk_context().centre_vertex()], 0.0);
  EXPECT_GT(c.lambda0_next, c.lambda0 * 1.5);

  const FemContext square(rectangle_mesh(1.0, 1.0, 0.02));
  const AsymptoticCoefficients sq = compute_lambda0(square);
  EXPECT_LE(rel(sq.lambda0, 2.0 * std::numbers::pi * std::numbers::pi), 0.005);
}

TEST(Lambda0, ExactScalingOfTheDiscreteProblem)
{
  const TriMesh mesh = generate_mesh(BoundaryCurve::circle(1.0), std::nullopt, 0.05);
  const double small = compute_lambda0(FemContext(mesh)).lambda0;
  const double big = compute_lambda0(FemContext(scaled(mesh, 2.0))).lambda0;
  EXPECT_NEAR(big / small, 0.25, 0.25e-6);
}

TEST(Lambda1, DiskGoldenAndLinearity)
{
  const AsymptoticCoefficients &c = disk_coefficients();
  EXPECT_LE(rel(c.lambda1, golden("lambda1")), 0.01);
  EXPECT_GE(c.lambda1, 0.0);

  const BoundaryCurve curve = BoundaryCurve::circle(1.0);
  AsymptoticCoefficients tripled = compute_lambda0(disk_context());
  compute_lambda1(tripled, disk_context(), curve, ThicknessProfile::constant(3.0));
  EXPECT_NEAR(tripled.lambda1 / c.lambda1, 3.0, 3e-12);

  AsymptoticCoefficients zero = compute_lambda0(disk_context());
  compute_lambda1(zero, disk_context(), curve, ThicknessProfile::constant(0.0));
  EXPECT_EQ(zero.lambda1, 0.0);
}

TEST(Lambda1, SignOfV0IsIrrelevant)
{
  const BoundaryCurve curve = BoundaryCurve::circle(1.0);
  AsymptoticCoefficients flipped = compute_lambda0(disk_context());
  flipped.v0 = -flipped.v0;
  std::vector<double> negated = flipped.flux0.values();
  for (double &v : negated)
    v = -v;
  flipped.flux0 = BoundaryTrace(flipped.flux0.s(), negated, flipped.flux0.period());
  compute_lambda1(flipped, disk_context(), curve, kUnit);
  compute_v1(flipped, disk_context(), curve, kUnit);
  compute_lambda2(flipped, disk_context(), curve, kUnit);
  const AsymptoticCoefficients &c = disk_coefficients();
  EXPECT_LE(std::abs(flipped.lambda1 - c.lambda1), 1e-12 * c.lambda1);
  EXPECT_LE(std::abs(flipped.lambda2 - c.lambda2), 1e-12 * c.lambda2);
}

TEST(V1, ConstraintTraceAndRadialOracle)
{
  const AsymptoticCoefficients &c = disk_coefficients();
  const FemContext &ctx = disk_context();
  EXPECT_LE(std::abs(c.v1.dot(ctx.mass * c.v0)), 1e-8);
  for (std::size_t i = 0; i < ctx.mesh.outer.size(); ++i)
    EXPECT_EQ(c.v1[ctx.mesh.outer[i]], -c.flux0(ctx.mesh.outer_s[i]));
  EXPECT_LE(std::abs(c.multiplier), 1e-6 * c.lambda1);

  const RadialCorrector oracle = radial_corrector(1.0);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < ctx.mesh.vertex_count(); ++i)
  {
    const double exact = oracle.v1.value(ctx.mesh.vertices[i].norm());
    worst = std::max(worst, std::abs(c.v1[static_cast<Eigen::Index>(i)] - exact));
    scale = std::max(scale, std::abs(exact));
  }
  EXPECT_LE(worst / scale, 0.02);
  // pointwise the recovered flux carries the data noise of v1; mean and rms converge
  double mean = 0.0, square = 0.0;
  for (double v : c.flux1.values())
  {
    mean += v;
    square += (v - oracle.flux) * (v - oracle.flux);
  }
  const double count = static_cast<double>(c.flux1.size());
  EXPECT_LE(std::abs(mean / count - oracle.flux), 1e-3 * oracle.flux);
  EXPECT_LE(std::sqrt(square / count), 0.02 * oracle.flux);
}

TEST(Lambda2, DiskGoldenAndDegenerateThickness)
{
  EXPECT_LE(rel(disk_coefficients().lambda2, golden("lambda2")), 0.02);
  const AsymptoticCoefficients zero =
      compute_coefficients(disk_context(), BoundaryCurve::circle(1.0), ThicknessProfile::constant(0.0));
  EXPECT_EQ(zero.lambda1, 0.0);
  EXPECT_EQ(zero.lambda2, 0.0);
  EXPECT_EQ(evaluate_expansion(zero, 0.05, 2), zero.lambda0);
}

TEST(Lambda2, OrientationFlipLeavesCoefficientsUnchanged)
{
  const auto raw = std::make_shared<EllipseCurve>(1.3, 1.0);
  const BoundaryCurve forward(raw), backward(std::make_shared<ReversedCurve>(raw));
  const AsymptoticCoefficients a = compute_coefficients(FemContext(generate_mesh(forward, std::nullopt, 0.05)),
                                                        forward, kUnit);
  const AsymptoticCoefficients b = compute_coefficients(FemContext(generate_mesh(backward, std::nullopt, 0.05)),
                                                        backward, kUnit);
  EXPECT_NEAR(a.lambda0, b.lambda0, 1e-8 * a.lambda0);
  EXPECT_NEAR(a.lambda1, b.lambda1, 1e-6 * a.lambda1);
  EXPECT_NEAR(a.lambda2, b.lambda2, 1e-4 * std::abs(a.lambda2));
  EXPECT_GT(a.lambda2, 0.0);
}

TEST(Coefficients, MeshConvergence)
{
  const BoundaryCurve curve = BoundaryCurve::circle(1.0);
  std::array<std::vector<double>, 3> values;
  for (double h : {0.08, 0.04, 0.02})
  {
    const AsymptoticCoefficients c = compute_coefficients(
        h == 0.02 ? disk_context() : FemContext(generate_mesh(curve, std::nullopt, h)), curve, kUnit);
    values[0].push_back(c.lambda0);
    values[1].push_back(c.lambda1);
    values[2].push_back(c.lambda2);
  }
  for (int k = 0; k < 3; ++k)
    EXPECT_GE(observed_order(values[k][0], values[k][1], values[k][2], 2.0), 1.5) << "lambda" << k;
}

TEST(Profiles, BoundaryConditionsHoldExactly)
{
  const BoundaryCurve curve = BoundaryCurve::ellipse(1.3, 1.0);
  const ThicknessProfile g = ThicknessProfile::fourier(1.0, {0.3}, {0.1});
  const FemContext ctx(generate_mesh(curve, std::nullopt, 0.05));
  const AsymptoticCoefficients c = compute_coefficients(ctx, curve, g);
  const LayerProfile p = layer_profiles(c, curve, g);
  for (std::size_t i = 0; i < ctx.mesh.outer.size(); ++i)
  {
    const double s = ctx.mesh.outer_s[i];
    const double gs = g.value(s, curve.length());
    EXPECT_DOUBLE_EQ(p.thickness(s), gs);
    EXPECT_LE(std::abs(p.w1(s, gs)), 1e-12);
    EXPECT_LE(std::abs(p.w2(s, gs)), 1e-12);
    EXPECT_LE(std::abs(p.w1(s, 0.0) - c.v1[ctx.mesh.outer[i]]), 1e-12);
    EXPECT_LE(std::abs(p.dw1_dxi(s, 0.0) - c.flux0(s)), 1e-12);
    EXPECT_LE(std::abs(p.dw2_dxi(s, 0.0) - c.flux1(s)), 1e-12);
  }
}

TEST(Expansion, Examples)
{
  const AsymptoticCoefficients &c = disk_coefficients();
  EXPECT_EQ(evaluate_expansion(c, 0.0, 2), c.lambda0);
  EXPECT_EQ(evaluate_expansion(c, 0.3, 0), c.lambda0);
  EXPECT_NEAR(evaluate_expansion(c, 0.01, 2) - evaluate_expansion(c, 0.01, 1), 1e-4 * c.lambda2, 1e-15);
  AsymptoticCoefficients exact;
  exact.lambda0 = golden("lambda0");
  exact.lambda1 = golden("lambda1");
  EXPECT_NEAR(evaluate_expansion(exact, 0.01, 1), exact.lambda0 * 1.02, 1e-12 * exact.lambda0);
  EXPECT_CODE(evaluate_expansion(c, 0.01, 3), ErrorCode::InvalidArgument);
}

TEST(Hash, StableFnv1a)
{
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

} // namespace
} // namespace thinspec

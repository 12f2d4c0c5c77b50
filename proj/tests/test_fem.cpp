// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "thinspec/convergence.hpp"
#include "thinspec/disk.hpp"
#include "thinspec/fem.hpp"
#include "thinspec/mesh.hpp"

namespace thinspec
{
namespace
{

using std::numbers::pi;
using testing::golden;

struct Disk
{
  TriMesh mesh;
  SymmetricSparse k, m;
  explicit Disk(double h)
      : mesh(generate_mesh(BoundaryCurve::circle(1.0), std::nullopt, h)),
        k(assemble(mesh, RegionFilter::All, MatrixKind::Stiffness)),
        m(assemble(mesh, RegionFilter::All, MatrixKind::Mass))
  {
  }
  EigenPairs first(int count = 1) const
  {
    return dirichlet_eigs(k, m, mesh.outer, count, mesh.nearest_vertex(Point::Zero()));
  }
};

TEST(Assemble, StiffnessKillsConstants)
{
  const Disk d(0.1);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(d.mesh.vertex_count()));
  const Eigen::VectorXd row_sums = d.k * ones;
  EXPECT_LE(row_sums.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Assemble, MassTotalsArea)
{
  const Disk d(0.05);
  EXPECT_LE(std::abs(d.m.total() - pi), 0.01);
  const FemField half = FemField::Constant(static_cast<Eigen::Index>(d.mesh.vertex_count()), 0.5);
  const SymmetricSparse weighted = assemble(d.mesh, RegionFilter::All, MatrixKind::Mass, &half);
  const Eigen::SparseMatrix<double> diff = weighted.lower() - 0.5 * d.m.lower();
  double worst = 0.0;
  for (Eigen::Index c = 0; c < diff.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, c); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  EXPECT_EQ(worst, 0.0);
}

TEST(Assemble, RegionsPartitionTheMatrices)
{
  const TriMesh mesh = generate_mesh(
      BoundaryCurve::circle(1.0),
      LayerConfig(0.05, ThicknessProfile::constant(1.0), RefractiveIndex::constant(0.5)), 0.1);
  const SymmetricSparse all = assemble(mesh, RegionFilter::All, MatrixKind::Mass);
  const SymmetricSparse core = assemble(mesh, RegionFilter::Core, MatrixKind::Mass);
  const SymmetricSparse layer = assemble(mesh, RegionFilter::Layer, MatrixKind::Mass);
  EXPECT_NEAR(all.total(), core.total() + layer.total(), 1e-12);
  EXPECT_NEAR(layer.total(), pi * (1.0 - 0.95 * 0.95), 2e-3);
}

TEST(DirichletEigs, UnitSquare)
{
  const double exact = 2.0 * pi * pi;
  for (double h : {0.1, 0.05, 0.02})
  {
    const TriMesh sq = rectangle_mesh(1.0, 1.0, h);
    const SymmetricSparse k = assemble(sq, RegionFilter::All, MatrixKind::Stiffness);
    const SymmetricSparse m = assemble(sq, RegionFilter::All, MatrixKind::Mass);
    const EigenPairs e = dirichlet_eigs(k, m, sq.outer, 1);
    EXPECT_GE(e.values[0], exact) << "h=" << h;
    if (h == 0.02)
    {
      EXPECT_LE((e.values[0] - exact) / exact, 0.005);
    }
  }
}

TEST(DirichletEigs, DiskFromAboveWithOrderTwo)
{
  const double exact = golden("lambda0");
  std::vector<double> values;
  for (double h : {0.08, 0.04, 0.02})
  {
    const Disk d(h);
    const EigenPairs e = d.first(3);
    EXPECT_GE(e.values[0], exact);
    values.push_back(e.values[0]);
    // M-orthonormal, positive at the centre
    EXPECT_NEAR(e.vectors.col(0).dot(d.m * Eigen::VectorXd(e.vectors.col(0))), 1.0, 1e-10);
    EXPECT_GT(e.vectors(d.mesh.nearest_vertex(Point::Zero()), 0), 0.0);
    // second eigenvalue of the disk is j11² (double)
    EXPECT_NEAR(e.values[1], std::pow(golden("j11"), 2), 0.2);
  }
  EXPECT_LE((values[2] - exact) / exact, 0.005);
  EXPECT_NEAR(observed_order(values[0], values[1], values[2], 2.0), 2.0, 0.3);
}

TEST(ConstrainedSource, HomogeneousProblemGivesZero)
{
  const Disk d(0.1);
  const EigenPairs e = d.first();
  const FemField zero = FemField::Zero(static_cast<Eigen::Index>(d.mesh.vertex_count()));
  const ConstrainedSolution sol = solve_constrained_source(d.k, d.m, e.values[0], zero, zero, d.mesh.outer,
                                                           e.vectors.col(0));
  EXPECT_LE(sol.field.cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(std::abs(sol.multiplier), 1e-12);
}

TEST(ConstrainedSource, DiskCorrectorMatchesRadialOracle)
{
  const Disk d(0.02);
  const EigenPairs e = d.first();
  const FemField v0 = e.vectors.col(0);
  const double lambda0 = e.values[0];
  const BoundaryTrace flux = boundary_flux(d.mesh, d.k, d.m, v0, lambda0, FemField::Zero(v0.size()));
  const double lambda1 = boundary_integral(d.mesh, [&](double s) { return flux(s) * flux(s); });
  FemField data = FemField::Zero(v0.size());
  for (std::size_t i = 0; i < d.mesh.outer.size(); ++i)
    data[d.mesh.outer[i]] = -flux.values()[i];
  const FemField rhs = -lambda1 * v0;
  const ConstrainedSolution sol = solve_constrained_source(d.k, d.m, lambda0, rhs, data, d.mesh.outer, v0);

  EXPECT_LE(std::abs(sol.multiplier), 1e-8 * std::sqrt(rhs.dot(d.m * rhs)));
  EXPECT_LE(std::abs(sol.field.dot(d.m * v0)), 1e-10);

  const RadialCorrector oracle = radial_corrector(1.0);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < d.mesh.vertex_count(); ++i)
  {
    const double exact = oracle.v1.value(d.mesh.vertices[i].norm());
    worst = std::max(worst, std::abs(sol.field[static_cast<Eigen::Index>(i)] - exact));
    scale = std::max(scale, std::abs(exact));
  }
  EXPECT_LE(worst / scale, 0.02);

  // residual of the free rows lies along M v0
  const DofMap free(d.mesh.vertex_count(), d.mesh.outer);
  const Eigen::VectorXd r = free.restrict(d.k * sol.field - lambda0 * (d.m * sol.field) + d.m * rhs);
  const Eigen::VectorXd mv = free.restrict(d.m * v0);
  const Eigen::VectorXd orth = r - (r.dot(mv) / mv.dot(mv)) * mv;
  EXPECT_LE(orth.norm(), 1e-10 * free.restrict(d.k * sol.field).norm());
}

TEST(BoundaryFlux, DiskEigenfunctionFlux)
{
  const double exact = golden("j01") / std::sqrt(pi);
  double previous_error = 0.0;
  for (double h : {0.04, 0.02})
  {
    const Disk d(h);
    const EigenPairs e = d.first();
    const BoundaryTrace flux =
        boundary_flux(d.mesh, d.k, d.m, e.vectors.col(0), e.values[0], FemField::Zero(e.vectors.rows()));
    double error = 0.0;
    for (double v : flux.values())
      error = std::max(error, std::abs(v - exact));
    if (h == 0.02)
    {
      EXPECT_LE(error / exact, 0.01);
      EXPECT_GE(previous_error / error, 3.0);
    }
    previous_error = error;
  }
}

TEST(BoundaryFlux, ConstantFieldHasNoFlux)
{
  const Disk d(0.1);
  const FemField ones = FemField::Ones(static_cast<Eigen::Index>(d.mesh.vertex_count()));
  const BoundaryTrace flux = boundary_flux(d.mesh, d.k, d.m, ones, 0.0, FemField::Zero(ones.size()));
  for (double v : flux.values())
    EXPECT_LE(std::abs(v), 1e-10);
}

TEST(BoundaryIntegral, ExactArclength)
{
  const Disk d(0.1);
  EXPECT_NEAR(boundary_integral(d.mesh, [](double) { return 1.0; }), 2.0 * pi, 1e-12);
  EXPECT_NEAR(boundary_integral(d.mesh, [](double s) { return std::cos(s) * std::cos(s); }), pi, 1e-5);
}

TEST(BoundaryTrace, PeriodicInterpolation)
{
  const BoundaryTrace t({0.0, 1.0, 2.0}, {0.0, 2.0, 4.0}, 3.0);
  EXPECT_DOUBLE_EQ(t(0.5), 1.0);
  EXPECT_DOUBLE_EQ(t(2.5), 2.0);
  EXPECT_DOUBLE_EQ(t(3.5), 1.0);
  EXPECT_DOUBLE_EQ(t(-0.5), 2.0);
}

} // namespace
} // namespace thinspec

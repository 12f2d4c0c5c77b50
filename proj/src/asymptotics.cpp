// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/asymptotics.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "thinspec/error.hpp"

namespace thinspec
{

FemContext::FemContext(TriMesh m) : mesh(std::move(m))
{
  stiffness = assemble(mesh, RegionFilter::All, MatrixKind::Stiffness);
  mass = assemble(mesh, RegionFilter::All, MatrixKind::Mass);
}

int FemContext::centre_vertex() const
{
  Point c = Point::Zero();
  double area = 0.0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
  {
    const auto &tri = mesh.triangles[t];
    const double a = mesh.signed_area(t);
    c += a * (mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]]) / 3.0;
    area += a;
  }
  return mesh.nearest_vertex(c / area);
}

AsymptoticCoefficients compute_lambda0(const FemContext &ctx)
{
  const EigenPairs pairs = dirichlet_eigs(ctx.stiffness, ctx.mass, ctx.mesh.outer, 2, ctx.centre_vertex());
  AsymptoticCoefficients c;
  c.lambda0 = pairs.values[0];
  c.lambda0_next = pairs.values[1];
  if (c.lambda0_next - c.lambda0 <= 1e-6 * c.lambda0)
    throw Error(ErrorCode::NearDegenerate, "first Dirichlet eigenvalue is not simple on this mesh");
  c.v0 = pairs.vectors.col(0);
  c.h = ctx.mesh.max_edge_length();
  const FemField zero = FemField::Zero(c.v0.size());
  c.flux0 = boundary_flux(ctx.mesh, ctx.stiffness, ctx.mass, c.v0, c.lambda0, zero);
  return c;
}

AsymptoticCoefficients compute_lambda0(const BoundaryCurve &curve, double h)
{
  AsymptoticCoefficients c = compute_lambda0(FemContext(generate_mesh(curve, std::nullopt, h)));
  c.geometry_hash = fnv1a(curve.describe());
  return c;
}

void compute_lambda1(AsymptoticCoefficients &coeffs, const FemContext &ctx, const BoundaryCurve &curve,
                     const ThicknessProfile &g)
{
  const double period = curve.length();
  coeffs.lambda1 = boundary_integral(ctx.mesh, [&](double s) {
    const double f = coeffs.flux0(s);
    return g.value(s, period) * f * f;
  });
}

void compute_v1(AsymptoticCoefficients &coeffs, const FemContext &ctx, const BoundaryCurve &curve,
                const ThicknessProfile &g)
{
  const auto nv = static_cast<Eigen::Index>(ctx.mesh.vertices.size());
  FemField data = FemField::Zero(nv);
  const auto &f0 = coeffs.flux0.values();
  for (std::size_t k = 0; k < ctx.mesh.outer.size(); ++k)
    data[ctx.mesh.outer[k]] = -g.value(ctx.mesh.outer_s[k], curve.length()) * f0[k];
  const FemField rhs = -coeffs.lambda1 * coeffs.v0;
  const ConstrainedSolution sol =
      solve_constrained_source(ctx.stiffness, ctx.mass, coeffs.lambda0, rhs, data, ctx.mesh.outer, coeffs.v0);
  coeffs.v1 = sol.field;
  coeffs.multiplier = sol.multiplier;
  coeffs.flux1 = boundary_flux(ctx.mesh, ctx.stiffness, ctx.mass, coeffs.v1, coeffs.lambda0, rhs);
}

void compute_lambda2(AsymptoticCoefficients &coeffs, const FemContext &ctx, const BoundaryCurve &curve,
                     const ThicknessProfile &g)
{
  const double period = curve.length();
  coeffs.lambda2 = boundary_integral(ctx.mesh, [&](double s) {
    const double gs = g.value(s, period);
    const double f0 = coeffs.flux0(s);
    return (0.5 * curve.curvature(s) * gs * gs * f0 + gs * coeffs.flux1(s)) * f0;
  });
}

AsymptoticCoefficients compute_coefficients(const FemContext &ctx, const BoundaryCurve &curve,
                                            const ThicknessProfile &g)
{
  AsymptoticCoefficients c = compute_lambda0(ctx);
  compute_lambda1(c, ctx, curve, g);
  compute_v1(c, ctx, curve, g);
  compute_lambda2(c, ctx, curve, g);
  c.geometry_hash = fnv1a(curve.describe() + "|" + g.describe());
  return c;
}

LayerProfile::LayerProfile(BoundaryCurve curve, ThicknessProfile g, BoundaryTrace flux0, BoundaryTrace flux1)
    : curve_(std::move(curve)), g_(std::move(g)), f0_(std::move(flux0)), f1_(std::move(flux1))
{
}

double LayerProfile::thickness(double s) const { return g_.value(s, curve_.length()); }

double LayerProfile::w1(double s, double xi) const
{
  return f0_(s) * xi - thickness(s) * f0_(s);
}

double LayerProfile::dw1_dxi(double s, double) const { return f0_(s); }

double LayerProfile::w2(double s, double xi) const
{
  const double k = curve_.curvature(s), g = thickness(s);
  const double f0 = f0_(s), f1 = f1_(s);
  return 0.5 * k * f0 * xi * xi + f1 * xi - 0.5 * k * f0 * g * g - f1 * g;
}

double LayerProfile::dw2_dxi(double s, double xi) const
{
  return curve_.curvature(s) * f0_(s) * xi + f1_(s);
}

LayerProfile layer_profiles(const AsymptoticCoefficients &coeffs, const BoundaryCurve &curve,
                            const ThicknessProfile &g)
{
  return LayerProfile(curve, g, coeffs.flux0, coeffs.flux1);
}

double evaluate_expansion(const AsymptoticCoefficients &coeffs, double delta0, int order)
{
  if (order < 0 || order > 2)
    throw Error(ErrorCode::InvalidArgument, "expansion order must be 0, 1 or 2");
  double value = coeffs.lambda0;
  if (order >= 1)
    value += delta0 * coeffs.lambda1;
  if (order >= 2)
    value += delta0 * delta0 * coeffs.lambda2;
  return value;
}

std::uint64_t fnv1a(const std::string &text)
{
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text)
  {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

void write_coefficients(std::ostream &os, const AsymptoticCoefficients &coeffs, const std::string &label)
{
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << coeffs.geometry_hash;
  os << "# " << label << "\n";
  os << "geometry_hash " << hash.str() << "\n";
  os << std::setprecision(15);
  os << "h " << coeffs.h << "\n";
  os << "lambda0 " << coeffs.lambda0 << "\n";
  os << "lambda1 " << coeffs.lambda1 << "\n";
  os << "lambda2 " << coeffs.lambda2 << "\n";
}

} // namespace thinspec

// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_ASYMPTOTICS_HPP
#define THINSPEC_ASYMPTOTICS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "thinspec/fem.hpp"
#include "thinspec/geometry.hpp"
#include "thinspec/mesh.hpp"

namespace thinspec
{

/// Mesh of Ω with its assembled stiffness and mass matrices.
struct FemContext
{
  TriMesh mesh;
  SymmetricSparse stiffness;
  SymmetricSparse mass;

  explicit FemContext(TriMesh m);
  /// Vertex nearest the area centroid, used to fix eigenvector signs.
  int centre_vertex() const;
};

struct AsymptoticCoefficients
{
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  // second discrete Dirichlet eigenvalue, kept for the simplicity check
  double lambda0_next = 0.0;
  FemField v0, v1;
  BoundaryTrace flux0, flux1;
  // multiplier of the orthogonality row in the v₁ solve
  double multiplier = 0.0;
  double h = 0.0;
  std::uint64_t geometry_hash = 0;
};

/// First Dirichlet pair on the context mesh; v₀ is M-normalized and
/// positive at the centre vertex. Throws NearDegenerate when the gap to the
/// second eigenvalue is at most 1e-6 λ₀.
AsymptoticCoefficients compute_lambda0(const FemContext &ctx);
AsymptoticCoefficients compute_lambda0(const BoundaryCurve &curve, double h);

/// λ₁ = ∫_Γ g (∂v₀/∂ν)² ds on top of compute_lambda0.
void compute_lambda1(AsymptoticCoefficients &coeffs, const FemContext &ctx, const BoundaryCurve &curve,
                     const ThicknessProfile &g);

/// v₁ with Δv₁ + λ₀v₁ = −λ₁v₀, v₁ = −g ∂v₀/∂ν on Γ, v₁ ⟂ v₀, and its flux.
void compute_v1(AsymptoticCoefficients &coeffs, const FemContext &ctx, const BoundaryCurve &curve,
                const ThicknessProfile &g);

/// λ₂ = ∫_Γ (κ/2 g² ∂v₀/∂ν + g ∂v₁/∂ν) ∂v₀/∂ν ds, κ convex-positive.
void compute_lambda2(AsymptoticCoefficients &coeffs, const FemContext &ctx, const BoundaryCurve &curve,
                     const ThicknessProfile &g);

/// All three coefficients on one mesh of Ω.
AsymptoticCoefficients compute_coefficients(const FemContext &ctx, const BoundaryCurve &curve,
                                            const ThicknessProfile &g);

// Higher orders follow the same pattern: equating powers of δ₀ in the
// stretched layer equations gives ∂²ŵ_k/∂ξ² = F_k(ŵ_{k-1}, ŵ_{k-2}, κ, λ_j)
// with ŵ_k(s, g) = 0 and ∂ŵ_k/∂ξ(s, 0) = ∂v_{k-1}/∂ν, while v_k solves
// Δv_k + λ₀v_k = −Σ_{j≥1} λ_j v_{k-j} with trace ŵ_k(s, 0); orthogonality
// of v_k to v₀ fixes λ_k. Only k ≤ 2 is provided.

/// Boundary-layer profiles ŵ₁, ŵ₂ in stretched coordinates (s, ξ),
/// 0 ≤ ξ ≤ g(s).
class LayerProfile
{
public:
  LayerProfile(BoundaryCurve curve, ThicknessProfile g, BoundaryTrace flux0, BoundaryTrace flux1);

  double w1(double s, double xi) const;
  double w2(double s, double xi) const;
  double dw1_dxi(double s, double xi) const;
  double dw2_dxi(double s, double xi) const;
  double thickness(double s) const;

private:
  BoundaryCurve curve_;
  ThicknessProfile g_;
  BoundaryTrace f0_, f1_;
};

LayerProfile layer_profiles(const AsymptoticCoefficients &coeffs, const BoundaryCurve &curve,
                            const ThicknessProfile &g);

/// λ₀ + δ₀λ₁ (+ δ₀²λ₂) truncated at `order` ∈ {0, 1, 2}.
double evaluate_expansion(const AsymptoticCoefficients &coeffs, double delta0, int order);

/// 64-bit FNV-1a of a text.
std::uint64_t fnv1a(const std::string &text);

/// Key-value text record with 15 significant digits.
void write_coefficients(std::ostream &os, const AsymptoticCoefficients &coeffs, const std::string &label);

} // namespace thinspec

#endif // THINSPEC_ASYMPTOTICS_HPP

// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_DISK_HPP
#define THINSPEC_DISK_HPP

#include <vector>

namespace thinspec
{

/// Coated disk: radius R, layer width δ, constant index n, angular mode m.
struct DiskProblem
{
  double radius = 1.0;
  double delta = 0.01;
  double n = 0.48;
  int mode = 0;

  /// Throws InvalidArgument unless 0 < δ < R and 0 < n < 1.
  void validate() const;
};

/// k-th Dirichlet eigenvalue of the disk in angular mode m: (j_{m,k}/R)².
double disk_dirichlet_eigen(double radius, int m, int k_index);

/// A radial function sampled on a uniform grid over [0, R], evaluated by
/// cubic Hermite interpolation.
class RadialField
{
public:
  RadialField() = default;
  RadialField(double radius, std::vector<double> values, std::vector<double> slopes);

  double value(double r) const;
  double derivative(double r) const;
  double radius() const { return radius_; }
  std::size_t nodes() const { return values_.size(); }

private:
  double radius_ = 0.0;
  std::vector<double> values_, slopes_;
};

/// Normalized first Dirichlet eigenfunction v₀(r) = J₀(jr/R) / (√π R |J₁(j)|).
double disk_v0(double radius, double r);

struct RadialCorrector
{
  RadialField v1;
  // inward normal derivative of v₁ at r = R
  double flux = 0.0;
  // 2π ∫ v₁ v₀ r dr after the solve
  double orthogonality = 0.0;
  // Lagrange multiplier of the orthogonality row
  double multiplier = 0.0;
};

/// Solves v″ + v′/r + λ₀v = −λ₁v₀ on (0, R) with v(R) = −g ∂v₀/∂ν and v ⟂ v₀,
/// by fourth-order finite differences on `nodes` intervals (even, ≥ 16).
/// λ₁ = 2πR g F₀² is taken consistent with g. Throws SolveSingular.
RadialCorrector radial_corrector(double radius, int nodes = 2000, double g = 1.0);

struct DiskCoefficients
{
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double flux0 = 0.0;
  double flux1 = 0.0;
};

/// λ₀, λ₁, λ₂ for the disk with constant thickness profile g.
DiskCoefficients disk_asymptotic_coeffs(double radius, int nodes = 2000, double g = 1.0);

/// Determinant of the 2×2 Cauchy-data matching system for mode m at
/// wavenumber k. Throws DomainError if k√n(R − δ) ≤ 0.
double transmission_determinant(const DiskProblem &prob, double k);

struct DiskRootOptions
{
  // scan step in k, in units of 1/R
  double step = 0.01;
  int max_mode = 6;
};

struct DiskRoot
{
  double lambda = 0.0;
  double k = 0.0;
  int mode = 0;
};

/// Smallest transmission eigenvalue over modes 0..max_mode; the mode field
/// of `prob` is ignored. Throws NoRootInBracket if none lies in (0, 3j₀,₁/R].
DiskRoot disk_first_te(const DiskProblem &prob, const DiskRootOptions &opts = {});

} // namespace thinspec

#endif // THINSPEC_DISK_HPP

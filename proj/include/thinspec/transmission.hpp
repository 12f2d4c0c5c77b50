// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_TRANSMISSION_HPP
#define THINSPEC_TRANSMISSION_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "thinspec/fem.hpp"
#include "thinspec/geometry.hpp"
#include "thinspec/mesh.hpp"

namespace thinspec
{

/// Symmetric pencil (A, B) of the two-field transmission problem. Unknowns
/// are v on every vertex followed by w on the layer vertices strictly
/// between Γ and Γ_δ; w on Γ is the v unknown there and w = 0 on Γ_δ.
struct CoupledPencil
{
  SymmetricSparse a;
  SymmetricSparse b;
  // number of v unknowns (= mesh vertices); zero for a bare pencil
  Eigen::Index v_count = 0;
  // vertex -> unknown carrying w there, or -1 where w vanishes or is undefined
  std::vector<int> w_dof;

  Eigen::Index dimension() const { return a.dimension(); }
  /// v part of a pencil vector, one value per vertex.
  FemField v_part(const Eigen::VectorXd &x) const;
  /// w part of a pencil vector, zero off the layer and on Γ_δ.
  FemField w_part(const Eigen::VectorXd &x) const;
};

/// Pencil from explicit symmetric matrices, used for small checks.
CoupledPencil make_pencil(const Eigen::SparseMatrix<double> &a, const Eigen::SparseMatrix<double> &b);

/// Nodal index n on the layer vertices (ξ/g from the mesh), zero elsewhere.
FemField layer_index_field(const TriMesh &mesh, const RefractiveIndex &n);

/// A = K_Ω ⊕ (−K_L), B = M_Ω ⊕ (−M_L^n) on the shared-trace DOF map.
/// Throws MissingLayer when the mesh has no LAYER triangles.
CoupledPencil assemble_pencil(const TriMesh &mesh, const RefractiveIndex &n);

struct ScanRoot
{
  double lambda = 0.0;
  double sigma_min = 0.0;
  // candidate outside [λ₀, λ_{δ,D}] when those bounds were supplied
  bool spurious = false;
  // located by a touching minimum instead of a sign change
  bool touching = false;
  // (lo, hi) bracket after each refinement step
  std::vector<std::pair<double, double>> history;
};

struct ScanRecord
{
  std::vector<double> lambda;
  std::vector<double> sigma_min;
  // number of negative pivots of A − λB
  std::vector<int> negative_count;
  std::vector<ScanRoot> roots;
};

struct ScanOptions
{
  int steps = 64;
  // refinement stops below this width times `scale`
  double root_width = 1e-10;
  double scale = 1.0;
  // inverse-iteration sweeps per σ_min estimate
  int sigma_iterations = 40;
};

/// Evaluates σ_min(A − λB) on a uniform grid over [lo, hi] and refines every
/// sign change of det(A − λB), and every local σ_min minimum below
/// 1e-6·median, to a bracket of width root_width·scale. Throws
/// InvalidArgument for fewer than 64 steps.
ScanRecord sigma_min_scan(const CoupledPencil &pencil, double lo, double hi, const ScanOptions &opts = {});

/// Smallest singular value of A − λB and its singular vector, by inverse
/// iteration on the factorized matrix. Throws FactorizationFailure when the
/// factorization breaks down.
double sigma_min(const CoupledPencil &pencil, double lambda, Eigen::VectorXd *vector = nullptr,
                 int iterations = 40);

void write_scan_csv(std::ostream &os, const ScanRecord &record);

struct TransmissionResult
{
  double lambda = 0.0;
  FemField v, w;
  double lambda0 = 0.0;
  double lambda_dirichlet_eroded = 0.0;
  ScanRecord scan;
  std::size_t dofs = 0;
};

struct FirstTeOptions
{
  ScanOptions scan;
  // relative margin added above the eroded Dirichlet value in the first pass
  double window_margin = 0.02;
};

/// First real transmission eigenvalue on a layered mesh. The scan starts on
/// [λ₀(1 − 1e-6), λ_{δ,D}(1 + margin)] and widens to 4λ₀ if empty; roots
/// outside the sandwich are kept in the record as SPURIOUS and skipped. The
/// eigenvector is scaled to ‖v‖_M = 1 with ⟨v, v₀⟩_M > 0. Throws NoRootFound.
TransmissionResult first_te(const TriMesh &mesh, const RefractiveIndex &n, double lambda0, const FemField &v0,
                            double lambda_eroded, const FirstTeOptions &opts = {});

/// As above, building the mesh and both bounds from the geometry.
TransmissionResult first_te(const BoundaryCurve &curve, const LayerConfig &layer, double h,
                            const FirstTeOptions &opts = {});

/// First Dirichlet eigenvalue of the CORE region of a layered mesh.
double eroded_dirichlet(const TriMesh &mesh);

/// First Dirichlet eigenvalue of Ω_δ; without a layer this is λ₀ of Ω.
double eroded_dirichlet(const BoundaryCurve &curve, const std::optional<LayerConfig> &layer, double h);

/// |λ − RHS| / λ for RHS = λ ∫_L (1 − n) w² + ∫_Ω |∇u|², u = w − v in the
/// layer and −v in the core, after scaling ‖u‖_{L²(Ω)} = 1.
double rayleigh_identity_residual(const TriMesh &mesh, double lambda, const FemField &v, const FemField &w,
                                  const RefractiveIndex &n);

/// Right-hand side of the identity above with the same normalization.
double rayleigh_identity_rhs(const TriMesh &mesh, double lambda, const FemField &v, const FemField &w,
                             const RefractiveIndex &n);

/// Discrete ‖a − b‖_{H¹(Ω)} on the mesh.
double h1_distance(const TriMesh &mesh, const FemField &a, const FemField &b);

struct EigenfunctionRate
{
  std::vector<double> delta;
  std::vector<double> error;
  double slope = 0.0;
};

/// ‖v_δ − v₀‖_{H¹} on the disk of radius R for each δ, with v_δ from the
/// coupled pencil and v₀ from the Dirichlet problem on the same mesh, and
/// the log-log slope of the errors.
EigenfunctionRate eigenfunction_error_rate(double radius, double n, const std::vector<double> &deltas, double h,
                                           const FirstTeOptions &opts = {});

} // namespace thinspec

#endif // THINSPEC_TRANSMISSION_HPP

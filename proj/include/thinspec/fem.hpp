// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_FEM_HPP
#define THINSPEC_FEM_HPP

#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Sparse>

#include "thinspec/geometry.hpp"
#include "thinspec/mesh.hpp"

namespace thinspec
{

/// Nodal values on every mesh vertex, essential data included.
using FemField = Eigen::VectorXd;

/// Symmetric sparse matrix holding its lower triangle only.
class SymmetricSparse
{
public:
  SymmetricSparse() = default;
  /// Entries above the diagonal are dropped.
  explicit SymmetricSparse(const Eigen::SparseMatrix<double> &matrix);

  Eigen::Index dimension() const { return lower_.rows(); }
  const Eigen::SparseMatrix<double> &lower() const { return lower_; }
  Eigen::SparseMatrix<double> full() const;
  double coeff(Eigen::Index i, Eigen::Index j) const;
  Eigen::VectorXd operator*(const Eigen::VectorXd &x) const;
  /// α·this + β·other.
  SymmetricSparse combined(double alpha, const SymmetricSparse &other, double beta) const;
  SymmetricSparse scaled(double alpha) const;
  /// Σᵢⱼ Aᵢⱼ.
  double total() const;

private:
  Eigen::SparseMatrix<double> lower_;
};

enum class RegionFilter
{
  All,
  Core,
  Layer
};

enum class MatrixKind
{
  Stiffness,
  Mass
};

/// P1 stiffness or mass over the triangles selected by `filter`, in global
/// vertex numbering. The coefficient is nodal and interpolated linearly;
/// mass integrals use the edge-midpoint rule.
SymmetricSparse assemble(const TriMesh &mesh, RegionFilter filter, MatrixKind kind,
                         const FemField *coefficient = nullptr);

/// Vertex renumbering that drops a fixed set.
struct DofMap
{
  std::vector<int> free;     // free index -> vertex
  std::vector<int> index_of; // vertex -> free index, or -1 when fixed

  DofMap() = default;
  DofMap(std::size_t vertex_count, const std::vector<int> &fixed);
  Eigen::Index size() const { return static_cast<Eigen::Index>(free.size()); }
  Eigen::VectorXd restrict(const Eigen::VectorXd &field) const;
  Eigen::VectorXd extend(const Eigen::VectorXd &reduced, std::size_t vertex_count) const;
};

/// Rows and columns of `a` kept by `rows`, `cols`, as a general sparse matrix.
Eigen::SparseMatrix<double> submatrix(const SymmetricSparse &a, const DofMap &rows, const DofMap &cols);

struct EigenPairs
{
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXd vectors; // one M-orthonormal column per value, zero on the fixed set
};

/// Smallest `count` eigenpairs of K u = λ M u with u = 0 on `fixed`, by
/// subspace inverse iteration and Rayleigh-Ritz. Each vector is made
/// positive at `sign_vertex` when it is free. Throws ConvergenceFailure.
EigenPairs dirichlet_eigs(const SymmetricSparse &k, const SymmetricSparse &m, const std::vector<int> &fixed,
                          int count, int sign_vertex = -1);

struct ConstrainedSolution
{
  FemField field;
  double multiplier = 0.0;
};

/// Solves Δu + λ₀u = rhs weakly with u = data on `fixed` and ⟨u, v₀⟩_M = 0,
/// through the bordered system of (K − λ₀M) with the column M v₀. `data`
/// supplies the values on `fixed`; other entries are ignored. Throws
/// SolveSingular.
ConstrainedSolution solve_constrained_source(const SymmetricSparse &k, const SymmetricSparse &m, double lambda0,
                                             const FemField &rhs, const FemField &data,
                                             const std::vector<int> &fixed, const FemField &v0);

/// Periodic table of values at increasing arclengths, linear in between.
class BoundaryTrace
{
public:
  BoundaryTrace() = default;
  BoundaryTrace(std::vector<double> s, std::vector<double> values, double period);

  double operator()(double s) const;
  const std::vector<double> &s() const { return s_; }
  const std::vector<double> &values() const { return values_; }
  double period() const { return period_; }
  std::size_t size() const { return values_.size(); }

private:
  std::vector<double> s_, values_;
  double period_ = 0.0;
};

/// 1D P1 mass matrix of the OUTER loop using arclength edge lengths.
Eigen::SparseMatrix<double> boundary_mass(const TriMesh &mesh);

/// Inward normal derivative of a field satisfying Δu + λu = rhs at the free
/// vertices, recovered from the equation residual at the OUTER vertices.
BoundaryTrace boundary_flux(const TriMesh &mesh, const SymmetricSparse &k, const SymmetricSparse &m,
                            const FemField &field, double lambda, const FemField &rhs);

/// ∫_Γ f(s) ds with 3-point Gauss on each OUTER arclength segment.
double boundary_integral(const TriMesh &mesh, const std::function<double(double)> &f);

/// H¹ seminorm squared and L² norm squared from assembled matrices.
double energy(const SymmetricSparse &a, const FemField &u);

} // namespace thinspec

#endif // THINSPEC_FEM_HPP

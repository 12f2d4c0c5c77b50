// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/fem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "thinspec/error.hpp"
#include "thinspec/quadrature.hpp"

namespace thinspec
{

SymmetricSparse::SymmetricSparse(const Eigen::SparseMatrix<double> &matrix)
{
  lower_ = matrix.triangularView<Eigen::Lower>();
  lower_.makeCompressed();
}

Eigen::SparseMatrix<double> SymmetricSparse::full() const
{
  Eigen::SparseMatrix<double> out = lower_.selfadjointView<Eigen::Lower>();
  return out;
}

double SymmetricSparse::coeff(Eigen::Index i, Eigen::Index j) const
{
  return i >= j ? lower_.coeff(i, j) : lower_.coeff(j, i);
}

Eigen::VectorXd SymmetricSparse::operator*(const Eigen::VectorXd &x) const
{
  return lower_.selfadjointView<Eigen::Lower>() * x;
}

SymmetricSparse SymmetricSparse::combined(double alpha, const SymmetricSparse &other, double beta) const
{
  SymmetricSparse out;
  out.lower_ = alpha * lower_ + beta * other.lower_;
  return out;
}

SymmetricSparse SymmetricSparse::scaled(double alpha) const
{
  SymmetricSparse out;
  out.lower_ = alpha * lower_;
  return out;
}

double SymmetricSparse::total() const
{
  double sum = 0.0;
  for (int col = 0; col < lower_.outerSize(); ++col)
  {
    for (Eigen::SparseMatrix<double>::InnerIterator it(lower_, col); it; ++it)
      sum += it.row() == it.col() ? it.value() : 2.0 * it.value();
  }
  return sum;
}

SymmetricSparse assemble(const TriMesh &mesh, RegionFilter filter, MatrixKind kind, const FemField *coefficient)
{
  const auto nv = static_cast<Eigen::Index>(mesh.vertices.size());
  if (coefficient && coefficient->size() != nv)
    throw Error(ErrorCode::InvalidArgument, "coefficient length does not match the mesh");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.triangles.size() * 6);

  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
  {
    const Region region = mesh.regions[t];
    if ((filter == RegionFilter::Core && region != Region::Core) ||
        (filter == RegionFilter::Layer && region != Region::Layer))
      continue;
    const auto &tri = mesh.triangles[t];
    const Point &p0 = mesh.vertices[tri[0]], &p1 = mesh.vertices[tri[1]], &p2 = mesh.vertices[tri[2]];
    const double area = mesh.signed_area(t);
    Eigen::Vector3d c = Eigen::Vector3d::Ones();
    if (coefficient)
      c << (*coefficient)[tri[0]], (*coefficient)[tri[1]], (*coefficient)[tri[2]];

    Eigen::Matrix3d local;
    if (kind == MatrixKind::Stiffness)
    {
      // gradients of the barycentric coordinates
      Eigen::Matrix<double, 2, 3> grad;
      grad.col(0) << p1.y() - p2.y(), p2.x() - p1.x();
      grad.col(1) << p2.y() - p0.y(), p0.x() - p2.x();
      grad.col(2) << p0.y() - p1.y(), p1.x() - p0.x();
      grad /= 2.0 * area;
      local = area * c.mean() * grad.transpose() * grad;
    }
    else
    {
      // edge midpoints: barycentric (½, ½, 0) and permutations, weight area/3
      local.setZero();
      for (int q = 0; q < 3; ++q)
      {
        Eigen::Vector3d phi = Eigen::Vector3d::Constant(0.5);
        phi[(q + 2) % 3] = 0.0;
        const double cq = phi.dot(c);
        local += (area / 3.0) * cq * phi * phi.transpose();
      }
    }
    for (int a = 0; a < 3; ++a)
    {
      for (int b = 0; b < 3; ++b)
      {
        if (tri[a] >= tri[b])
          trip.emplace_back(tri[a], tri[b], local(a, b));
      }
    }
  }
  Eigen::SparseMatrix<double> lower(nv, nv);
  lower.setFromTriplets(trip.begin(), trip.end());
  return SymmetricSparse(lower);
}

DofMap::DofMap(std::size_t vertex_count, const std::vector<int> &fixed) : index_of(vertex_count, 0)
{
  for (int v : fixed)
    index_of.at(v) = -1;
  for (std::size_t v = 0; v < vertex_count; ++v)
  {
    if (index_of[v] == 0)
    {
      index_of[v] = static_cast<int>(free.size());
      free.push_back(static_cast<int>(v));
    }
    else
    {
      index_of[v] = -1;
    }
  }
}

Eigen::VectorXd DofMap::restrict(const Eigen::VectorXd &field) const
{
  Eigen::VectorXd out(size());
  for (Eigen::Index i = 0; i < size(); ++i)
    out[i] = field[free[i]];
  return out;
}

Eigen::VectorXd DofMap::extend(const Eigen::VectorXd &reduced, std::size_t vertex_count) const
{
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vertex_count));
  for (Eigen::Index i = 0; i < size(); ++i)
    out[free[i]] = reduced[i];
  return out;
}

Eigen::SparseMatrix<double> submatrix(const SymmetricSparse &a, const DofMap &rows, const DofMap &cols)
{
  std::vector<Eigen::Triplet<double>> trip;
  const auto &low = a.lower();
  auto push = [&](int i, int j, double v) {
    const int r = rows.index_of[i], c = cols.index_of[j];
    if (r >= 0 && c >= 0)
      trip.emplace_back(r, c, v);
  };
  for (int col = 0; col < low.outerSize(); ++col)
  {
    for (Eigen::SparseMatrix<double>::InnerIterator it(low, col); it; ++it)
    {
      const int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
      push(i, j, it.value());
      if (i != j)
        push(j, i, it.value());
    }
  }
  Eigen::SparseMatrix<double> out(rows.size(), cols.size());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

EigenPairs dirichlet_eigs(const SymmetricSparse &k, const SymmetricSparse &m, const std::vector<int> &fixed,
                          int count, int sign_vertex)
{
  if (count < 1 || count > 10)
    throw Error(ErrorCode::InvalidArgument, "dirichlet_eigs supports 1..10 pairs");
  const std::size_t nv = static_cast<std::size_t>(k.dimension());
  const DofMap dofs(nv, fixed);
  const Eigen::Index n = dofs.size();
  const int block = std::min<Eigen::Index>(count + 4, n);
  if (n < count)
    throw Error(ErrorCode::InvalidArgument, "fewer free vertices than requested eigenpairs");

  const Eigen::SparseMatrix<double> kf = submatrix(k, dofs, dofs);
  const Eigen::SparseMatrix<double> mf = submatrix(m, dofs, dofs);
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> chol(kf);
  if (chol.info() != Eigen::Success)
    throw Error(ErrorCode::FactorizationFailure, "stiffness matrix is not positive definite");

  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::MatrixXd x(n, block);
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      x(i, j) = (j == 0 ? 1.0 : unif(rng));

  Eigen::VectorXd values;
  for (int iter = 0; iter < 500; ++iter)
  {
    const Eigen::MatrixXd y = chol.solve(mf * x);
    const Eigen::MatrixXd ky = kf * y;
    const Eigen::MatrixXd my = mf * y;
    Eigen::MatrixXd kr = y.transpose() * ky;
    Eigen::MatrixXd mr = y.transpose() * my;
    kr = 0.5 * (kr + kr.transpose()).eval();
    mr = 0.5 * (mr + mr.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(kr, mr);
    if (ritz.info() != Eigen::Success)
      throw Error(ErrorCode::ConvergenceFailure, "Rayleigh-Ritz step failed");
    x = y * ritz.eigenvectors();
    values = ritz.eigenvalues();

    const Eigen::MatrixXd kx = ky * ritz.eigenvectors();
    const Eigen::MatrixXd mx = my * ritz.eigenvectors();
    bool converged = true;
    for (int j = 0; j < count && converged; ++j)
    {
      const double res = (kx.col(j) - values[j] * mx.col(j)).norm();
      converged = res <= 1e-10 * kx.col(j).norm();
    }
    if (converged)
    {
      EigenPairs out;
      out.values = values.head(count);
      out.vectors.resize(static_cast<Eigen::Index>(nv), count);
      const int pivot = sign_vertex >= 0 ? dofs.index_of.at(sign_vertex) : -1;
      for (int j = 0; j < count; ++j)
      {
        Eigen::VectorXd col = x.col(j);
        col /= std::sqrt(col.dot(mf * col));
        if (pivot >= 0 && col[pivot] < 0.0)
          col = -col;
        out.vectors.col(j) = dofs.extend(col, nv);
      }
      return out;
    }
  }
  throw Error(ErrorCode::ConvergenceFailure, "subspace iteration did not converge in 500 steps");
}

ConstrainedSolution solve_constrained_source(const SymmetricSparse &k, const SymmetricSparse &m, double lambda0,
                                             const FemField &rhs, const FemField &data,
                                             const std::vector<int> &fixed, const FemField &v0)
{
  const std::size_t nv = static_cast<std::size_t>(k.dimension());
  const DofMap dofs(nv, fixed);
  const Eigen::Index n = dofs.size();

  FemField lift = FemField::Zero(static_cast<Eigen::Index>(nv));
  for (int v : fixed)
    lift[v] = data[v];

  const SymmetricSparse shifted = k.combined(1.0, m, -lambda0);
  const Eigen::VectorXd mv0 = m * v0;
  // weak form of −Δu − λ₀u = −rhs after moving the lift to the right
  const Eigen::VectorXd load = -(m * rhs) - shifted * lift;

  const Eigen::SparseMatrix<double> af = submatrix(shifted, dofs, dofs);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(af.nonZeros() + 2 * n));
  for (int col = 0; col < af.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(af, col); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  Eigen::VectorXd b(n + 1);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const double c = mv0[dofs.free[i]];
    trip.emplace_back(i, n, c);
    trip.emplace_back(n, i, c);
    b[i] = load[dofs.free[i]];
  }
  b[n] = -mv0.dot(lift);

  Eigen::SparseMatrix<double> saddle(n + 1, n + 1);
  saddle.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(saddle);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::SolveSingular, "bordered system is singular");
  const Eigen::VectorXd sol = lu.solve(b);
  if (lu.info() != Eigen::Success || !sol.allFinite())
    throw Error(ErrorCode::SolveSingular, "bordered solve failed");

  ConstrainedSolution out;
  out.field = dofs.extend(sol.head(n), nv) + lift;
  out.multiplier = sol[n];
  return out;
}

BoundaryTrace::BoundaryTrace(std::vector<double> s, std::vector<double> values, double period)
    : s_(std::move(s)), values_(std::move(values)), period_(period)
{
  if (s_.empty() || s_.size() != values_.size() || !(period_ > 0.0))
    throw Error(ErrorCode::InvalidArgument, "boundary trace needs matching samples and a positive period");
}

double BoundaryTrace::operator()(double s) const
{
  double u = std::fmod(s - s_.front(), period_);
  if (u < 0.0)
    u += period_;
  u += s_.front();
  auto it = std::upper_bound(s_.begin(), s_.end(), u);
  const std::size_t hi = static_cast<std::size_t>(it - s_.begin());
  const std::size_t lo = hi - 1;
  const double s_lo = s_[lo];
  const double s_hi = hi < s_.size() ? s_[hi] : s_.front() + period_;
  const double v_hi = hi < s_.size() ? values_[hi] : values_.front();
  const double t = (u - s_lo) / (s_hi - s_lo);
  return (1.0 - t) * values_[lo] + t * v_hi;
}

namespace
{

double segment_length(const TriMesh &mesh, std::size_t k)
{
  const std::size_t next = (k + 1) % mesh.outer_s.size();
  double ds = mesh.outer_s[next] - mesh.outer_s[k];
  if (next == 0)
    ds += mesh.boundary_length;
  return ds;
}

} // namespace

Eigen::SparseMatrix<double> boundary_mass(const TriMesh &mesh)
{
  const std::size_t nb = mesh.outer.size();
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t k = 0; k < nb; ++k)
  {
    const double ds = segment_length(mesh, k);
    const int a = static_cast<int>(k), b = static_cast<int>((k + 1) % nb);
    trip.emplace_back(a, a, ds / 3.0);
    trip.emplace_back(b, b, ds / 3.0);
    trip.emplace_back(a, b, ds / 6.0);
    trip.emplace_back(b, a, ds / 6.0);
  }
  Eigen::SparseMatrix<double> out(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nb));
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

BoundaryTrace boundary_flux(const TriMesh &mesh, const SymmetricSparse &k, const SymmetricSparse &m,
                            const FemField &field, double lambda, const FemField &rhs)
{
  // residual of −Δu − λu = −rhs tested with the boundary hat functions is
  // the outward conormal derivative
  const Eigen::VectorXd residual = k * field - lambda * (m * field) + m * rhs;
  const std::size_t nb = mesh.outer.size();
  Eigen::VectorXd r(static_cast<Eigen::Index>(nb));
  for (std::size_t i = 0; i < nb; ++i)
    r[static_cast<Eigen::Index>(i)] = residual[mesh.outer[i]];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(boundary_mass(mesh));
  const Eigen::VectorXd q = solver.solve(r);
  std::vector<double> values(nb);
  for (std::size_t i = 0; i < nb; ++i)
    values[i] = -q[static_cast<Eigen::Index>(i)];
  return BoundaryTrace(mesh.outer_s, std::move(values), mesh.boundary_length);
}

double boundary_integral(const TriMesh &mesh, const std::function<double(double)> &f)
{
  double sum = 0.0;
  for (std::size_t k = 0; k < mesh.outer_s.size(); ++k)
  {
    const double a = mesh.outer_s[k];
    const double ds = segment_length(mesh, k);
    for (int q = 0; q < 3; ++q)
      sum += ds * quad::kGauss3Weights[q] * f(a + ds * quad::kGauss3Nodes[q]);
  }
  return sum;
}

double energy(const SymmetricSparse &a, const FemField &u)
{
  return u.dot(a * u);
}

} // namespace thinspec

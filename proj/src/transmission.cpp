// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>

#include <Eigen/SparseCholesky>

#include "thinspec/asymptotics.hpp"
#include "thinspec/convergence.hpp"
#include "thinspec/error.hpp"

namespace thinspec
{

namespace
{

using SparseMatrix = Eigen::SparseMatrix<double>;
using Ldlt = Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower>;

// Holds one symbolic analysis of A − λB and refactorizes per λ.
class ShiftedFactor
{
public:
  explicit ShiftedFactor(const CoupledPencil &pencil) : pencil_(pencil)
  {
    solver_.analyzePattern(shifted(1.0));
  }

  // Returns false when the factorization breaks down.
  bool factor(double lambda)
  {
    solver_.factorize(shifted(lambda));
    if (solver_.info() != Eigen::Success)
      return false;
    const Eigen::VectorXd &d = solver_.vectorD();
    negatives_ = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i)
    {
      if (!(d[i] != 0.0) || !std::isfinite(d[i]))
        return false;
      if (d[i] < 0.0)
        ++negatives_;
    }
    return true;
  }

  int negatives() const { return negatives_; }

  // Inverse iteration for the smallest |eigenvalue| of the factored matrix;
  // for a symmetric matrix that is σ_min.
  double smallest(Eigen::VectorXd &x, int iterations) const
  {
    x.normalize();
    double sigma = std::numeric_limits<double>::infinity();
    for (int it = 0; it < iterations; ++it)
    {
      Eigen::VectorXd y = solver_.solve(x);
      const double norm = y.norm();
      if (!std::isfinite(norm) || norm == 0.0)
        return 0.0;
      const double next = 1.0 / norm;
      x = y / norm;
      if (std::abs(next - sigma) <= 1e-12 * next)
      {
        sigma = next;
        break;
      }
      sigma = next;
    }
    return sigma;
  }

private:
  SparseMatrix shifted(double lambda) const
  {
    SparseMatrix s = pencil_.a.lower() - lambda * pencil_.b.lower();
    s.makeCompressed();
    return s;
  }

  const CoupledPencil &pencil_;
  Ldlt solver_;
  int negatives_ = 0;
};

Eigen::VectorXd start_vector(Eigen::Index n)
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x[i] = unif(rng);
  return x;
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

FemField CoupledPencil::v_part(const Eigen::VectorXd &x) const { return x.head(v_count); }

FemField CoupledPencil::w_part(const Eigen::VectorXd &x) const
{
  FemField w = FemField::Zero(v_count);
  for (Eigen::Index v = 0; v < v_count; ++v)
  {
    const int d = w_dof[static_cast<std::size_t>(v)];
    if (d >= 0)
      w[v] = x[d];
  }
  return w;
}

CoupledPencil make_pencil(const Eigen::SparseMatrix<double> &a, const Eigen::SparseMatrix<double> &b)
{
  if (a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.cols())
    throw Error(ErrorCode::InvalidArgument, "pencil matrices must be square and of equal size");
  CoupledPencil p;
  p.a = SymmetricSparse(a);
  p.b = SymmetricSparse(b);
  return p;
}

FemField layer_index_field(const TriMesh &mesh, const RefractiveIndex &n)
{
  FemField f = FemField::Zero(static_cast<Eigen::Index>(mesh.vertices.size()));
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
  {
    if (mesh.layer_fraction[v] >= 0.0)
      f[static_cast<Eigen::Index>(v)] = n.value(mesh.layer_fraction[v]);
  }
  return f;
}

CoupledPencil assemble_pencil(const TriMesh &mesh, const RefractiveIndex &n)
{
  if (!mesh.has_layer() || mesh.inner.empty())
    throw Error(ErrorCode::MissingLayer, "mesh has no layer region");
  const std::size_t nv = mesh.vertices.size();
  const std::vector<std::uint8_t> tags = mesh.boundary_tags();

  std::vector<bool> in_layer(nv, false);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
  {
    if (mesh.regions[t] == Region::Layer)
      for (int v : mesh.triangles[t])
        in_layer[static_cast<std::size_t>(v)] = true;
  }

  CoupledPencil p;
  p.v_count = static_cast<Eigen::Index>(nv);
  p.w_dof.assign(nv, -1);
  int next = static_cast<int>(nv);
  for (std::size_t v = 0; v < nv; ++v)
  {
    if (!in_layer[v] || tags[v] == 2)
      continue;
    p.w_dof[v] = tags[v] == 1 ? static_cast<int>(v) : next++;
  }
  const Eigen::Index dim = next;

  const FemField index = layer_index_field(mesh, n);
  const SymmetricSparse k_all = assemble(mesh, RegionFilter::All, MatrixKind::Stiffness);
  const SymmetricSparse m_all = assemble(mesh, RegionFilter::All, MatrixKind::Mass);
  const SymmetricSparse k_layer = assemble(mesh, RegionFilter::Layer, MatrixKind::Stiffness);
  const SymmetricSparse m_layer = assemble(mesh, RegionFilter::Layer, MatrixKind::Mass, &index);

  auto build = [&](const SymmetricSparse &omega, const SymmetricSparse &layer) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(omega.lower().nonZeros() + layer.lower().nonZeros()));
    for (int col = 0; col < omega.lower().outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(omega.lower(), col); it; ++it)
        trip.emplace_back(it.row(), it.col(), it.value());
    for (int col = 0; col < layer.lower().outerSize(); ++col)
    {
      for (SparseMatrix::InnerIterator it(layer.lower(), col); it; ++it)
      {
        const int i = p.w_dof[static_cast<std::size_t>(it.row())];
        const int j = p.w_dof[static_cast<std::size_t>(it.col())];
        if (i < 0 || j < 0)
          continue;
        // keep the lower triangle after renumbering
        trip.emplace_back(std::max(i, j), std::min(i, j), -it.value());
      }
    }
    SparseMatrix lower(dim, dim);
    lower.setFromTriplets(trip.begin(), trip.end());
    return SymmetricSparse(lower);
  };
  p.a = build(k_all, k_layer);
  p.b = build(m_all, m_layer);
  return p;
}

double sigma_min(const CoupledPencil &pencil, double lambda, Eigen::VectorXd *vector, int iterations)
{
  ShiftedFactor factor(pencil);
  if (!factor.factor(lambda))
    throw Error(ErrorCode::FactorizationFailure, "A - lambda B is singular at the requested shift");
  Eigen::VectorXd x = vector && vector->size() == pencil.dimension() ? *vector : start_vector(pencil.dimension());
  const double s = factor.smallest(x, iterations);
  if (vector)
    *vector = x;
  return s;
}

ScanRecord sigma_min_scan(const CoupledPencil &pencil, double lo, double hi, const ScanOptions &opts)
{
  if (opts.steps < 64)
    throw Error(ErrorCode::InvalidArgument, "sigma_min_scan needs at least 64 steps");
  if (!(lo > 0.0) || !(hi > lo))
    throw Error(ErrorCode::InvalidArgument, "sigma_min_scan needs 0 < lo < hi");

  ShiftedFactor factor(pencil);
  ScanRecord rec;
  Eigen::VectorXd x = start_vector(pencil.dimension());
  std::vector<bool> singular;
  for (int i = 0; i <= opts.steps; ++i)
  {
    const double lambda = lo + (hi - lo) * i / opts.steps;
    rec.lambda.push_back(lambda);
    if (!factor.factor(lambda))
    {
      // exactly singular grid point: a root sitting on the grid
      rec.sigma_min.push_back(0.0);
      rec.negative_count.push_back(rec.negative_count.empty() ? 0 : rec.negative_count.back());
      singular.push_back(true);
      continue;
    }
    rec.negative_count.push_back(factor.negatives());
    rec.sigma_min.push_back(factor.smallest(x, opts.sigma_iterations));
    singular.push_back(false);
  }

  const double threshold = 1e-6 * median(rec.sigma_min);
  const double width = opts.root_width * opts.scale;
  Eigen::VectorXd y = x;

  for (int i = 0; i < opts.steps; ++i)
  {
    ScanRoot root;
    const bool parity_change = (rec.negative_count[i] - rec.negative_count[i + 1]) % 2 != 0;
    if (singular[i])
    {
      root.lambda = rec.lambda[i];
      root.sigma_min = 0.0;
      rec.roots.push_back(root);
      continue;
    }
    if (parity_change && !singular[i + 1])
    {
      // bisection on the parity of the negative pivot count (sign of det)
      double a = rec.lambda[i], b = rec.lambda[i + 1];
      const int parity_a = rec.negative_count[i] % 2;
      while (b - a > width)
      {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b)
          break;
        if (!factor.factor(mid))
        {
          a = b = mid;
          break;
        }
        if (factor.negatives() % 2 == parity_a)
          a = mid;
        else
          b = mid;
        root.history.emplace_back(a, b);
      }
      root.lambda = 0.5 * (a + b);
      root.sigma_min = factor.factor(root.lambda) ? factor.smallest(y, opts.sigma_iterations) : 0.0;
      rec.roots.push_back(root);
      continue;
    }
    // local minimum without a sign change: a touching root
    if (i >= 1 && !parity_change && rec.sigma_min[i] < threshold && rec.sigma_min[i] <= rec.sigma_min[i - 1] &&
        rec.sigma_min[i] <= rec.sigma_min[i + 1])
    {
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = rec.lambda[i - 1], b = rec.lambda[i + 1];
      auto eval = [&](double l) { return factor.factor(l) ? factor.smallest(y, opts.sigma_iterations) : 0.0; };
      double c = b - phi * (b - a), d = a + phi * (b - a);
      double fc = eval(c), fd = eval(d);
      while (b - a > width)
      {
        if (fc < fd)
        {
          b = d;
          d = c;
          fd = fc;
          c = b - phi * (b - a);
          fc = eval(c);
        }
        else
        {
          a = c;
          c = d;
          fc = fd;
          d = a + phi * (b - a);
          fd = eval(d);
        }
        root.history.emplace_back(a, b);
      }
      root.lambda = 0.5 * (a + b);
      root.sigma_min = eval(root.lambda);
      root.touching = true;
      if (root.sigma_min < threshold)
        rec.roots.push_back(root);
    }
  }
  if (singular.back())
  {
    ScanRoot root;
    root.lambda = rec.lambda.back();
    rec.roots.push_back(root);
  }
  return rec;
}

void write_scan_csv(std::ostream &os, const ScanRecord &record)
{
  os << std::setprecision(17);
  os << "lambda,sigma_min\n";
  for (std::size_t i = 0; i < record.lambda.size(); ++i)
    os << record.lambda[i] << ',' << record.sigma_min[i] << "\n";
  os << "\n# roots\n";
  os << "root_lambda,root_sigma_min,kind,refinement_steps\n";
  for (const ScanRoot &r : record.roots)
  {
    os << r.lambda << ',' << r.sigma_min << ',' << (r.spurious ? "SPURIOUS" : (r.touching ? "TOUCHING" : "ROOT"))
       << ',' << r.history.size() << "\n";
  }
}

TransmissionResult first_te(const TriMesh &mesh, const RefractiveIndex &n, double lambda0, const FemField &v0,
                            double lambda_eroded, const FirstTeOptions &opts)
{
  const CoupledPencil pencil = assemble_pencil(mesh, n);
  ScanOptions scan = opts.scan;
  scan.scale = lambda0;

  const double lo = lambda0 * (1.0 - 1e-6);
  const double upper = std::min(4.0 * lambda0, lambda_eroded * (1.0 + opts.window_margin));
  const double tol = 1e-6 * lambda0;

  TransmissionResult out;
  out.lambda0 = lambda0;
  out.lambda_dirichlet_eroded = lambda_eroded;
  out.dofs = static_cast<std::size_t>(pencil.dimension());

  auto pick = [&](ScanRecord &rec) -> const ScanRoot * {
    const ScanRoot *best = nullptr, *fallback = nullptr;
    for (ScanRoot &r : rec.roots)
    {
      r.spurious = r.lambda < lambda0 - tol || r.lambda > lambda_eroded + tol;
      if (!r.spurious && !best)
        best = &r;
      if (!fallback)
        fallback = &r;
    }
    return best ? best : fallback;
  };

  out.scan = sigma_min_scan(pencil, lo, upper, scan);
  const ScanRoot *root = pick(out.scan);
  if (!root && upper < 4.0 * lambda0)
  {
    out.scan = sigma_min_scan(pencil, upper, 4.0 * lambda0, scan);
    root = pick(out.scan);
  }
  if (!root)
    throw Error(ErrorCode::NoRootFound, "no transmission eigenvalue in (lambda0, 4 lambda0]");
  out.lambda = root->lambda;

  // singular vector at the refined root
  Eigen::VectorXd x = start_vector(pencil.dimension());
  ShiftedFactor factor(pencil);
  double shift = out.lambda;
  while (!factor.factor(shift))
    shift += 1e-12 * lambda0;
  factor.smallest(x, 200);

  const SymmetricSparse m_all = assemble(mesh, RegionFilter::All, MatrixKind::Mass);
  out.v = pencil.v_part(x);
  out.w = pencil.w_part(x);
  const double norm = std::sqrt(out.v.dot(m_all * out.v));
  double sign = 1.0;
  if (v0.size() == out.v.size() && out.v.dot(m_all * v0) < 0.0)
    sign = -1.0;
  out.v *= sign / norm;
  out.w *= sign / norm;
  return out;
}

double eroded_dirichlet(const TriMesh &mesh)
{
  if (mesh.inner.empty())
  {
    const FemContext ctx(mesh);
    return dirichlet_eigs(ctx.stiffness, ctx.mass, mesh.outer, 1).values[0];
  }
  const std::size_t nv = mesh.vertices.size();
  std::vector<bool> in_core(nv, false);
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
  {
    if (mesh.regions[t] == Region::Core)
      for (int v : mesh.triangles[t])
        in_core[static_cast<std::size_t>(v)] = true;
  }
  std::vector<int> fixed(mesh.inner.begin(), mesh.inner.end());
  for (std::size_t v = 0; v < nv; ++v)
  {
    if (!in_core[v])
      fixed.push_back(static_cast<int>(v));
  }
  const SymmetricSparse k = assemble(mesh, RegionFilter::Core, MatrixKind::Stiffness);
  const SymmetricSparse m = assemble(mesh, RegionFilter::Core, MatrixKind::Mass);
  return dirichlet_eigs(k, m, fixed, 1).values[0];
}

double eroded_dirichlet(const BoundaryCurve &curve, const std::optional<LayerConfig> &layer, double h)
{
  return eroded_dirichlet(generate_mesh(curve, layer, h));
}

TransmissionResult first_te(const BoundaryCurve &curve, const LayerConfig &layer, double h,
                            const FirstTeOptions &opts)
{
  const TriMesh mesh = generate_mesh(curve, layer, h);
  const FemContext ctx(mesh);
  const AsymptoticCoefficients c0 = compute_lambda0(ctx);
  return first_te(mesh, layer.index(), c0.lambda0, c0.v0, eroded_dirichlet(mesh), opts);
}

double rayleigh_identity_rhs(const TriMesh &mesh, double lambda, const FemField &v, const FemField &w,
                             const RefractiveIndex &n)
{
  const FemField u = w - v;
  const SymmetricSparse k_all = assemble(mesh, RegionFilter::All, MatrixKind::Stiffness);
  const SymmetricSparse m_all = assemble(mesh, RegionFilter::All, MatrixKind::Mass);
  FemField contrast = layer_index_field(mesh, n);
  for (Eigen::Index i = 0; i < contrast.size(); ++i)
    contrast[i] = mesh.layer_fraction[static_cast<std::size_t>(i)] >= 0.0 ? 1.0 - contrast[i] : 0.0;
  const SymmetricSparse m_contrast = assemble(mesh, RegionFilter::Layer, MatrixKind::Mass, &contrast);
  const double scale = 1.0 / energy(m_all, u);
  return scale * (lambda * energy(m_contrast, w) + energy(k_all, u));
}

double rayleigh_identity_residual(const TriMesh &mesh, double lambda, const FemField &v, const FemField &w,
                                  const RefractiveIndex &n)
{
  return std::abs(lambda - rayleigh_identity_rhs(mesh, lambda, v, w, n)) / lambda;
}

double h1_distance(const TriMesh &mesh, const FemField &a, const FemField &b)
{
  const FemField e = a - b;
  const SymmetricSparse k = assemble(mesh, RegionFilter::All, MatrixKind::Stiffness);
  const SymmetricSparse m = assemble(mesh, RegionFilter::All, MatrixKind::Mass);
  return std::sqrt(energy(k, e) + energy(m, e));
}

EigenfunctionRate eigenfunction_error_rate(double radius, double n, const std::vector<double> &deltas, double h,
                                           const FirstTeOptions &opts)
{
  const BoundaryCurve curve = BoundaryCurve::circle(radius);
  EigenfunctionRate rate;
  for (double delta : deltas)
  {
    const LayerConfig layer(delta, ThicknessProfile::constant(1.0), RefractiveIndex::constant(n));
    const TriMesh mesh = generate_mesh(curve, layer, h);
    const FemContext ctx(mesh);
    const AsymptoticCoefficients c0 = compute_lambda0(ctx);
    const TransmissionResult te = first_te(mesh, layer.index(), c0.lambda0, c0.v0, eroded_dirichlet(mesh), opts);
    rate.delta.push_back(delta);
    rate.error.push_back(h1_distance(mesh, te.v, c0.v0));
  }
  rate.slope = fit_order(rate.delta, rate.error).slope;
  return rate;
}

} // namespace thinspec

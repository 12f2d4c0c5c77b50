// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/disk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "thinspec/bessel.hpp"
#include "thinspec/error.hpp"

namespace thinspec
{

namespace
{

constexpr double kPi = std::numbers::pi;

// Fornberg's finite-difference weights at x0 for derivatives 0..order on
// arbitrary nodes.
std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double> &x, int order)
{
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(order + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0, c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i)
  {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j)
    {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1)
      {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

// first derivative at node i of samples on a uniform grid with even symmetry at 0
std::vector<double> grid_slopes(const std::vector<double> &v, double h)
{
  const int n = static_cast<int>(v.size()) - 1;
  std::vector<double> d(v.size(), 0.0);
  auto at = [&](int i) { return v[std::abs(i)]; };
  for (int i = 1; i <= n; ++i)
  {
    if (i + 2 <= n)
    {
      d[i] = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
      continue;
    }
    std::vector<double> nodes;
    for (int k = n - 6; k <= n; ++k)
      nodes.push_back(k * h);
    const auto w = fd_weights(i * h, nodes, 1);
    double s = 0.0;
    for (int k = 0; k < 7; ++k)
      s += w[1][k] * v[n - 6 + k];
    d[i] = s;
  }
  return d;
}

} // namespace

void DiskProblem::validate() const
{
  if (!(radius > 0.0) || !(delta > 0.0) || !(delta < radius))
    throw Error(ErrorCode::InvalidArgument, "disk problem needs 0 < delta < R");
  if (!(n > 0.0) || !(n < 1.0))
    throw Error(ErrorCode::InvalidArgument, "disk problem needs 0 < n < 1");
  if (mode < 0)
    throw Error(ErrorCode::InvalidArgument, "negative angular mode");
}

double disk_dirichlet_eigen(double radius, int m, int k_index)
{
  if (!(radius > 0.0))
    throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const double j = bessel_j_zero(m, k_index);
  return (j / radius) * (j / radius);
}

RadialField::RadialField(double radius, std::vector<double> values, std::vector<double> slopes)
    : radius_(radius), values_(std::move(values)), slopes_(std::move(slopes))
{
  if (values_.size() < 2 || values_.size() != slopes_.size())
    throw Error(ErrorCode::InvalidArgument, "RadialField needs matching samples");
}

double RadialField::value(double r) const
{
  const int n = static_cast<int>(values_.size()) - 1;
  const double h = radius_ / n;
  const double x = std::clamp(r, 0.0, radius_) / h;
  const int i = std::min(static_cast<int>(x), n - 1);
  const double t = x - i;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * values_[i] + h10 * h * slopes_[i] + h01 * values_[i + 1] + h11 * h * slopes_[i + 1];
}

double RadialField::derivative(double r) const
{
  const int n = static_cast<int>(values_.size()) - 1;
  const double h = radius_ / n;
  const double x = std::clamp(r, 0.0, radius_) / h;
  const int i = std::min(static_cast<int>(x), n - 1);
  const double t = x - i;
  const double d00 = 6 * t * t - 6 * t, d10 = 3 * t * t - 4 * t + 1;
  const double d01 = -d00, d11 = 3 * t * t - 2 * t;
  return (d00 * values_[i] + d01 * values_[i + 1]) / h + d10 * slopes_[i] + d11 * slopes_[i + 1];
}

double disk_v0(double radius, double r)
{
  static const double j = bessel_j_zero(0, 1);
  static const double j1 = std::abs(bessel_j(1, j).value);
  return bessel_j(0, j * r / radius).value / (std::sqrt(kPi) * radius * j1);
}

RadialCorrector radial_corrector(double radius, int nodes, double g)
{
  if (!(radius > 0.0))
    throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  if (nodes < 16 || nodes % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, "radial corrector needs an even node count >= 16");

  const int n = nodes;
  const double h = radius / n;
  const double j = bessel_j_zero(0, 1);
  const double lambda0 = (j / radius) * (j / radius);
  const double flux0 = j / (std::sqrt(kPi) * radius * radius);
  const double lambda1 = 2.0 * kPi * radius * g * flux0 * flux0;
  const double datum = -g * flux0;

  std::vector<double> v0(n + 1);
  const double j1 = std::abs(bessel_j(1, j).value);
  for (int i = 0; i <= n; ++i)
    v0[i] = bessel_j(0, j * i * h / radius).value / (std::sqrt(kPi) * radius * j1);
  v0[n] = 0.0;

  // Simpson weights times r for the orthogonality row
  std::vector<double> wr(n + 1);
  for (int i = 0; i <= n; ++i)
  {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    wr[i] = w * h / 3.0 * (i * h);
  }

  // unknowns v_0 .. v_{n-1}, then μ; v_n is the Dirichlet datum
  const int dim = n + 1;
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  auto add = [&](int row, int col, double val) {
    if (col == n)
      rhs[row] -= val * datum;
    else
      trip.emplace_back(row, col, val);
  };

  // r = 0: 2v″ + λ₀v = f from the even extension
  {
    const double c = 2.0 / (12.0 * h * h);
    add(0, 0, -30.0 * c + lambda0);
    add(0, 1, 32.0 * c);
    add(0, 2, -2.0 * c);
    rhs[0] += -lambda1 * v0[0];
    trip.emplace_back(0, n, v0[0]);
  }
  std::vector<double> edge_nodes;
  for (int k = n - 5; k <= n; ++k)
    edge_nodes.push_back(k * h);
  for (int i = 1; i < n; ++i)
  {
    const double r = i * h;
    if (i + 2 <= n)
    {
      const int idx[5] = {i - 2, i - 1, i, i + 1, i + 2};
      const double d2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
      const double d1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
      for (int k = 0; k < 5; ++k)
      {
        const double coef = d2[k] / (12.0 * h * h) + d1[k] / (12.0 * h * r);
        add(i, std::abs(idx[k]), coef);
      }
    }
    else
    {
      const auto w = fd_weights(r, edge_nodes, 2);
      for (int k = 0; k < 6; ++k)
        add(i, n - 5 + k, w[2][k] + w[1][k] / r);
    }
    add(i, i, lambda0);
    rhs[i] += -lambda1 * v0[i];
    trip.emplace_back(i, n, v0[i]);
  }
  for (int i = 0; i < n; ++i)
    trip.emplace_back(n, i, wr[i] * v0[i]);
  rhs[n] = -wr[n] * v0[n] * datum;

  Eigen::SparseMatrix<double> a(dim, dim);
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::SolveSingular, "radial corrector system is singular");
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite())
    throw Error(ErrorCode::SolveSingular, "radial corrector solve failed");

  std::vector<double> v1(n + 1);
  for (int i = 0; i < n; ++i)
    v1[i] = x[i];
  v1[n] = datum;

  RadialCorrector out;
  out.multiplier = x[n];
  double ortho = 0.0;
  for (int i = 0; i <= n; ++i)
    ortho += wr[i] * v1[i] * v0[i];
  out.orthogonality = 2.0 * kPi * ortho;

  std::vector<double> slopes = grid_slopes(v1, h);
  out.flux = -slopes[n];
  out.v1 = RadialField(radius, std::move(v1), std::move(slopes));
  return out;
}

DiskCoefficients disk_asymptotic_coeffs(double radius, int nodes, double g)
{
  const double j = bessel_j_zero(0, 1);
  DiskCoefficients c;
  c.lambda0 = (j / radius) * (j / radius);
  c.flux0 = j / (std::sqrt(kPi) * radius * radius);
  const double perimeter = 2.0 * kPi * radius;
  c.lambda1 = perimeter * g * c.flux0 * c.flux0;
  if (g == 0.0)
    return c;
  const RadialCorrector corr = radial_corrector(radius, nodes, g);
  c.flux1 = corr.flux;
  const double kappa = 1.0 / radius;
  c.lambda2 = perimeter * (0.5 * kappa * g * g * c.flux0 + g * c.flux1) * c.flux0;
  return c;
}

double transmission_determinant(const DiskProblem &prob, double k)
{
  const double q = k * std::sqrt(prob.n);
  const double a = q * (prob.radius - prob.delta);
  if (!(a > 0.0))
    throw Error(ErrorCode::DomainError, "transmission determinant needs k sqrt(n) (R - delta) > 0");
  const int m = prob.mode;
  const BesselValue ja = bessel_j(m, a), ya = bessel_y(m, a);
  const BesselValue jq = bessel_j(m, q * prob.radius), yq = bessel_y(m, q * prob.radius);
  const BesselValue jk = bessel_j(m, k * prob.radius);
  const double w = jq.value * ya.value - yq.value * ja.value;
  const double dw = q * (jq.derivative * ya.value - yq.derivative * ja.value);
  return k * jk.derivative * w - jk.value * dw;
}

DiskRoot disk_first_te(const DiskProblem &prob, const DiskRootOptions &opts)
{
  prob.validate();
  if (!(opts.step > 0.0) || opts.max_mode < 0)
    throw Error(ErrorCode::InvalidArgument, "invalid disk scan options");
  const double step = opts.step / prob.radius;
  const double kmax = 3.0 * bessel_j_zero(0, 1) / prob.radius;

  DiskRoot best;
  best.k = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= opts.max_mode; ++m)
  {
    DiskProblem p = prob;
    p.mode = m;
    double ka = step, fa = transmission_determinant(p, ka);
    while (ka < std::min(kmax, best.k))
    {
      const double kb = ka + step;
      const double fb = transmission_determinant(p, kb);
      if (fa == 0.0 || (fa < 0.0) != (fb < 0.0))
      {
        double lo = ka, hi = kb, flo = fa;
        while (hi - lo > 1e-12)
        {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi)
            break;
          const double fm = transmission_determinant(p, mid);
          if ((fm < 0.0) == (flo < 0.0) && fm != 0.0)
          {
            lo = mid;
            flo = fm;
          }
          else
          {
            hi = mid;
          }
        }
        const double root = fa == 0.0 ? ka : 0.5 * (lo + hi);
        if (root < best.k)
        {
          best.k = root;
          best.mode = m;
        }
        break;
      }
      ka = kb;
      fa = fb;
    }
  }
  if (!(best.k <= kmax))
    throw Error(ErrorCode::NoRootInBracket, "no transmission eigenvalue below 3 j01 / R");
  best.lambda = best.k * best.k;
  return best;
}

} // namespace thinspec

// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/convergence.hpp"

#include <cmath>

#include "thinspec/error.hpp"

namespace thinspec
{

OrderFit fit_order(const std::vector<double> &x, const std::vector<double> &errors)
{
  if (x.size() != errors.size())
    throw Error(ErrorCode::InvalidArgument, "fit_order needs matching abscissae and errors");
  OrderFit fit;
  std::vector<double> lx, le;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    if (errors[i] == 0.0)
    {
      fit.notes.push_back("dropped zero error at x = " + std::to_string(x[i]));
      continue;
    }
    if (!(x[i] > 0.0) || !(errors[i] > 0.0) || !std::isfinite(errors[i]))
      throw Error(ErrorCode::InvalidArgument, "fit_order needs positive finite data");
    lx.push_back(std::log(x[i]));
    le.push_back(std::log(errors[i]));
  }
  if (lx.size() < 3)
    throw Error(ErrorCode::InsufficientData, "fit_order needs at least 3 positive pairs");

  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i)
  {
    mx += lx[i];
    my += le[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i)
  {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (le[i] - my);
    syy += (le[i] - my) * (le[i] - my);
  }
  if (sxx == 0.0)
    throw Error(ErrorCode::InsufficientData, "fit_order needs distinct abscissae");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.used = lx.size();
  return fit;
}

double richardson_limit(double coarse, double fine, double ratio, double order)
{
  const double f = std::pow(ratio, order);
  return fine + (fine - coarse) / (f - 1.0);
}

double richardson_error(double coarse, double fine, double ratio, double order)
{
  return std::abs(fine - coarse) / (std::pow(ratio, order) - 1.0);
}

double observed_order(double coarse, double medium, double fine, double ratio)
{
  return std::log(std::abs(coarse - medium) / std::abs(medium - fine)) / std::log(ratio);
}

ThicknessEstimate estimate_thickness(double lambda_measured, double lambda0, double lambda1, double lambda2)
{
  if (lambda_measured < lambda0)
    throw Error(ErrorCode::BelowLambda0, "measured eigenvalue lies below the Dirichlet eigenvalue");
  if (!(lambda1 > 0.0))
    throw Error(ErrorCode::InvalidArgument, "thickness estimate needs lambda1 > 0");
  const double gap = lambda_measured - lambda0;
  ThicknessEstimate est;
  est.first_order = gap / lambda1;
  const double disc = lambda1 * lambda1 + 4.0 * lambda2 * gap;
  if (disc >= 0.0)
  {
    // the root continuous in λ₂ at 0, written without cancellation
    est.quadratic = 2.0 * gap / (lambda1 + std::sqrt(disc));
  }
  return est;
}

} // namespace thinspec

// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_CONVERGENCE_HPP
#define THINSPEC_CONVERGENCE_HPP

#include <optional>
#include <string>
#include <vector>

namespace thinspec
{

struct OrderFit
{
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t used = 0;
  std::vector<std::string> notes;
};

/// Least-squares line through (log x, log e). Zero errors are dropped with
/// a note; throws InsufficientData when fewer than 3 positive pairs remain.
OrderFit fit_order(const std::vector<double> &x, const std::vector<double> &errors);

/// Extrapolated limit from values at mesh sizes h and h/ratio.
double richardson_limit(double coarse, double fine, double ratio, double order);

/// Error estimate of the fine value, |fine − coarse| / (ratio^order − 1).
double richardson_error(double coarse, double fine, double ratio, double order);

/// Observed order from three values on meshes refined by `ratio`.
double observed_order(double coarse, double medium, double fine, double ratio);

struct ThicknessEstimate
{
  double first_order = 0.0;
  // smaller positive root of λ₂δ² + λ₁δ − (λ − λ₀) = 0, when real
  std::optional<double> quadratic;
};

/// Layer thickness from a measured first eigenvalue. Throws BelowLambda0
/// when the measurement lies below λ₀ and InvalidArgument when λ₁ ≤ 0.
ThicknessEstimate estimate_thickness(double lambda_measured, double lambda0, double lambda1, double lambda2);

} // namespace thinspec

#endif // THINSPEC_CONVERGENCE_HPP

// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_BESSEL_HPP
#define THINSPEC_BESSEL_HPP

#include <vector>

namespace thinspec
{

struct BesselValue
{
  double value = 0.0;
  double derivative = 0.0;
  // set by bessel_y below x = 1e-8, where Y_m is dominated by its singularity
  bool magnitude_warning = false;
};

/// J_m(x) and J_m'(x) for 0 ≤ m ≤ 20, 0 ≤ x ≤ 1e4. Throws DomainError for x < 0.
BesselValue bessel_j(int m, double x);

/// Y_m(x) and Y_m'(x) for x > 0. Throws DomainError for x ≤ 0.
BesselValue bessel_y(int m, double x);

/// Ascending power series; accurate while the terms do not cancel (x ≲ 12).
double bessel_j_series(int m, double x);

/// J_0 ... J_mmax by Miller's backward recurrence normalized with
/// J_0 + 2 Σ J_2k = 1.
std::vector<double> bessel_j_recurrence(int mmax, double x);

/// Y_0 ... Y_mmax by upward recurrence from Y_0, Y_1.
std::vector<double> bessel_y_sequence(int mmax, double x);

enum class ZeroMethod
{
  Recurrence,
  Series
};

/// k-th positive zero of J_m (k ≥ 1) by bracketing and bisection.
double bessel_j_zero(int m, int k, ZeroMethod method = ZeroMethod::Recurrence);

/// k-th positive zero of Y_m (k ≥ 1).
double bessel_y_zero(int m, int k);

} // namespace thinspec

#endif // THINSPEC_BESSEL_HPP

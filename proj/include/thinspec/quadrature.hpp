// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_QUADRATURE_HPP
#define THINSPEC_QUADRATURE_HPP

#include <array>
#include <cmath>

namespace thinspec::quad
{

// 10-point Gauss-Legendre nodes on [-1, 1] (positive half) and weights.
inline constexpr std::array<double, 5> kGL10Nodes = {
    0.1488743389816312108848260, 0.4333953941292471907992659, 0.6794095682990244062343274,
    0.8650633666889845107320967, 0.9739065285171717200779640};
inline constexpr std::array<double, 5> kGL10Weights = {
    0.2955242247147528701738930, 0.2692667193099963550912269, 0.2190863625159820439955349,
    0.1494513491505805931457763, 0.0666713443086881375935688};

template <typename F>
double gauss_legendre10(F &&f, double a, double b)
{
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGL10Nodes.size(); ++i)
  {
    const double dx = half * kGL10Nodes[i];
    sum += kGL10Weights[i] * (f(mid - dx) + f(mid + dx));
  }
  return sum * half;
}

namespace detail
{
template <typename F>
double adaptive(F &f, double a, double b, double whole, double tol, int depth)
{
  const double mid = 0.5 * (a + b);
  const double left = gauss_legendre10(f, a, mid);
  const double right = gauss_legendre10(f, mid, b);
  if (depth <= 0 || std::abs(left + right - whole) <= tol)
    return left + right;
  return adaptive(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive(f, mid, b, right, 0.5 * tol, depth - 1);
}
} // namespace detail

/// Adaptive bisection of 10-point Gauss-Legendre to an absolute tolerance.
template <typename F>
double integrate(F &&f, double a, double b, double tol = 1e-13)
{
  const double whole = gauss_legendre10(f, a, b);
  return detail::adaptive(f, a, b, whole, tol, 30);
}

// Three-point Gauss rule on [0, 1].
inline constexpr std::array<double, 3> kGauss3Nodes = {0.1127016653792583114820735,
                                                        0.5, 0.8872983346207416885179265};
inline constexpr std::array<double, 3> kGauss3Weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

} // namespace thinspec::quad

#endif // THINSPEC_QUADRATURE_HPP

// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "thinspec/error.hpp"

namespace thinspec
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209;
// below this J_m is evaluated by its power series, which has no cancellation
constexpr double kSeriesLimit = 2.0;
// above this Y_0, Y_1 come from the Hankel asymptotic expansion
constexpr double kHankelLimit = 25.0;

void check_order(int m)
{
  if (m < 0 || m > 200)
    throw Error(ErrorCode::DomainError, "Bessel order out of range: " + std::to_string(m));
}

// Hankel expansion P, Q for order nu; the error is below 1e-17 once x ≥ 25.
void hankel_pq(double nu, double x, double &p, double &q)
{
  const double mu = 4.0 * nu * nu;
  p = 1.0;
  q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k)
  {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > last)
      break;
    last = std::abs(term);
    const int sign = ((k + 1) / 2) % 2 == 1 ? 1 : -1;
    if (k % 2 == 0)
      p += (k / 2 % 2 == 1 ? -1.0 : 1.0) * term;
    else
      q += sign * term;
    if (std::abs(term) < 1e-18)
      break;
  }
}

double hankel_y(double nu, double x)
{
  double p, q;
  hankel_pq(nu, x, p, q);
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

// Y_0 and Y_1 from the Neumann series over Miller-normalized J_2k.
void neumann_y01(double x, double &y0, double &y1)
{
  const double root = std::max(x, 2.0);
  const int kmax = static_cast<int>(root + 40.0 + std::sqrt(40.0 * root)) + 2;
  const std::vector<double> j = bessel_j_recurrence(kmax + 1, x);
  const double log_term = std::log(0.5 * x) + kEulerGamma;

  double sum = 0.0, dsum = 0.0;
  for (int k = 1; 2 * k + 1 <= kmax + 1; ++k)
  {
    const double sign = (k % 2 == 1) ? -1.0 : 1.0;
    sum += sign * j[2 * k] / k;
    dsum += sign * 0.5 * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  y0 = (2.0 / kPi) * (log_term * j[0] - 2.0 * sum);
  const double dy0 = (2.0 / kPi) * (j[0] / x - log_term * j[1] - 2.0 * dsum);
  y1 = -dy0;
}

double bisect(const std::function<double(double)> &f, double a, double b)
{
  double fa = f(a);
  for (int iter = 0; iter < 200; ++iter)
  {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b)
      break;
    const double fm = f(mid);
    if (fm == 0.0)
      return mid;
    if ((fm < 0.0) == (fa < 0.0))
    {
      a = mid;
      fa = fm;
    }
    else
    {
      b = mid;
    }
    if (b - a <= 1e-16 * b)
      break;
  }
  return 0.5 * (a + b);
}

double kth_sign_change(const std::function<double(double)> &f, double start, int k)
{
  if (k < 1)
    throw Error(ErrorCode::InvalidArgument, "zero index must be ≥ 1");
  constexpr double kStep = 0.05;
  double a = start, fa = f(a);
  int found = 0;
  for (int i = 0; i < 1000000; ++i)
  {
    const double b = a + kStep;
    const double fb = f(b);
    if ((fa < 0.0) != (fb < 0.0) || fb == 0.0)
    {
      if (++found == k)
        return bisect(f, a, b);
    }
    a = b;
    fa = fb;
  }
  throw Error(ErrorCode::NoRootInBracket, "no Bessel zero located");
}

} // namespace

double bessel_j_series(int m, double x)
{
  check_order(m);
  if (x < 0.0)
    throw Error(ErrorCode::DomainError, "bessel_j_series: negative argument");
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= m; ++i)
    term *= half / i;
  double sum = term;
  const double q = half * half;
  for (int k = 1; k < 500; ++k)
  {
    term *= -q / (static_cast<double>(k) * (k + m));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum))
      break;
  }
  return sum;
}

std::vector<double> bessel_j_recurrence(int mmax, double x)
{
  if (x < 0.0)
    throw Error(ErrorCode::DomainError, "bessel_j_recurrence: negative argument");
  if (mmax < 1)
    mmax = 1;
  std::vector<double> out(static_cast<std::size_t>(mmax) + 1, 0.0);
  if (x == 0.0)
  {
    out[0] = 1.0;
    return out;
  }
  const double top = std::max(static_cast<double>(mmax), x);
  int start = static_cast<int>(top + 40.0 + std::sqrt(40.0 * top));
  start += start % 2;

  double next = 0.0, cur = 1e-300, norm = 0.0;
  for (int k = start; k >= 1; --k)
  {
    const double prev = (2.0 * k / x) * cur - next;
    next = cur;
    cur = prev;
    // cur now holds J_{k-1} up to scale
    if (k - 1 <= mmax)
      out[k - 1] = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0)
      norm += 2.0 * cur;
    if (std::abs(cur) > 1e250)
    {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      for (int i = k - 1; i <= mmax; ++i)
        out[i] *= 1e-250;
    }
  }
  norm += cur;
  for (double &v : out)
    v /= norm;
  return out;
}

BesselValue bessel_j(int m, double x)
{
  check_order(m);
  if (x < 0.0 || std::isnan(x))
    throw Error(ErrorCode::DomainError, "bessel_j: negative argument");
  if (x < kSeriesLimit)
  {
    const double v = bessel_j_series(m, x);
    const double next = bessel_j_series(m + 1, x);
    const double d = (m == 0) ? -next : 0.5 * (bessel_j_series(m - 1, x) - next);
    return {v, d, false};
  }
  const std::vector<double> j = bessel_j_recurrence(m + 1, x);
  const double d = (m == 0) ? -j[1] : 0.5 * (j[m - 1] - j[m + 1]);
  return {j[m], d, false};
}

std::vector<double> bessel_y_sequence(int mmax, double x)
{
  if (!(x > 0.0))
    throw Error(ErrorCode::DomainError, "bessel_y: argument must be positive");
  std::vector<double> y(static_cast<std::size_t>(std::max(mmax, 1)) + 1);
  if (x >= kHankelLimit)
  {
    y[0] = hankel_y(0.0, x);
    y[1] = hankel_y(1.0, x);
  }
  else
  {
    neumann_y01(x, y[0], y[1]);
  }
  for (std::size_t k = 1; k + 1 < y.size(); ++k)
    y[k + 1] = (2.0 * k / x) * y[k] - y[k - 1];
  return y;
}

BesselValue bessel_y(int m, double x)
{
  check_order(m);
  if (!(x > 0.0))
    throw Error(ErrorCode::DomainError, "bessel_y: argument must be positive");
  const std::vector<double> y = bessel_y_sequence(m + 1, x);
  const double d = (m == 0) ? -y[1] : 0.5 * (y[m - 1] - y[m + 1]);
  return {y[m], d, x < 1e-8};
}

double bessel_j_zero(int m, int k, ZeroMethod method)
{
  check_order(m);
  std::function<double(double)> f;
  if (method == ZeroMethod::Series)
    f = [m](double x) { return bessel_j_series(m, x); };
  else
    f = [m](double x) { return bessel_j_recurrence(m, x)[m]; };
  // the first zero of J_m exceeds m
  return kth_sign_change(f, std::max(static_cast<double>(m), 0.05), k);
}

double bessel_y_zero(int m, int k)
{
  check_order(m);
  return kth_sign_change([m](double x) { return bessel_y(m, x).value; },
                         std::max(0.5 * m, 0.05), k);
}

} // namespace thinspec

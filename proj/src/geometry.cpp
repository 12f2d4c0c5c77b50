// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "thinspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "thinspec/error.hpp"
#include "thinspec/quadrature.hpp"

namespace thinspec
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(const Eigen::Vector2d &a, const Eigen::Vector2d &b)
{
  return a.x() * b.y() - a.y() * b.x();
}

Eigen::Vector2d rotate90(const Eigen::Vector2d &v)
{
  return {-v.y(), v.x()};
}

double positive_mod(double x, double period)
{
  double r = std::fmod(x, period);
  if (r < 0.0)
    r += period;
  if (r >= period)
    r -= period;
  return r;
}

std::string fmt(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Γ_δ as a raw curve in the parent arclength.
class OffsetCurve final : public ParametricCurve
{
public:
  OffsetCurve(BoundaryCurve parent, LayerConfig layer)
    : parent_(std::move(parent)), layer_(std::move(layer))
  {
  }

  double period() const override { return parent_.length(); }

  Point d0(double s) const override
  {
    return parent_.position(s) + thickness(s) * parent_.inward_normal(s);
  }

  Point d1(double s) const override
  {
    const double d = thickness(s);
    const double dp = layer_.delta0() * layer_.profile().d1(s, period());
    return (1.0 - d * parent_.curvature(s)) * parent_.tangent(s) + dp * parent_.inward_normal(s);
  }

  Point d2(double s) const override
  {
    const double d = thickness(s);
    const double dp = layer_.delta0() * layer_.profile().d1(s, period());
    const double dpp = layer_.delta0() * layer_.profile().d2(s, period());
    const double k = parent_.curvature(s);
    const double kp = parent_.curvature_derivative(s);
    return (-2.0 * dp * k - d * kp) * parent_.tangent(s) +
           ((1.0 - d * k) * k + dpp) * parent_.inward_normal(s);
  }

  // Fourth-order central difference of d2; only needed when offsetting an
  // offset curve again.
  Point d3(double s) const override
  {
    const double h = 1e-3 * period();
    return (d2(s - 2 * h) - 8.0 * d2(s - h) + 8.0 * d2(s + h) - d2(s + 2 * h)) / (12.0 * h);
  }

  std::string describe() const override
  {
    return "offset(" + parent_.describe() + ";" + layer_.describe() + ")";
  }

private:
  double thickness(double s) const { return layer_.thickness(parent_, s); }

  BoundaryCurve parent_;
  LayerConfig layer_;
};

} // namespace

// --- raw curves -----------------------------------------------------------

CircleCurve::CircleCurve(double radius, Point center) : radius_(radius), center_(std::move(center))
{
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::InvalidArgument, "circle radius must be positive");
}

double CircleCurve::period() const { return kTwoPi; }
Point CircleCurve::d0(double t) const { return center_ + radius_ * Point(std::cos(t), std::sin(t)); }
Point CircleCurve::d1(double t) const { return radius_ * Point(-std::sin(t), std::cos(t)); }
Point CircleCurve::d2(double t) const { return radius_ * Point(-std::cos(t), -std::sin(t)); }
Point CircleCurve::d3(double t) const { return radius_ * Point(std::sin(t), -std::cos(t)); }
std::string CircleCurve::describe() const
{
  return "circle(r=" + fmt(radius_) + ",c=" + fmt(center_.x()) + "," + fmt(center_.y()) + ")";
}

EllipseCurve::EllipseCurve(double a, double b) : a_(a), b_(b)
{
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(ErrorCode::InvalidArgument, "ellipse semi-axes must be positive");
}

double EllipseCurve::period() const { return kTwoPi; }
Point EllipseCurve::d0(double t) const { return {a_ * std::cos(t), b_ * std::sin(t)}; }
Point EllipseCurve::d1(double t) const { return {-a_ * std::sin(t), b_ * std::cos(t)}; }
Point EllipseCurve::d2(double t) const { return {-a_ * std::cos(t), -b_ * std::sin(t)}; }
Point EllipseCurve::d3(double t) const { return {a_ * std::sin(t), -b_ * std::cos(t)}; }
std::string EllipseCurve::describe() const { return "ellipse(a=" + fmt(a_) + ",b=" + fmt(b_) + ")"; }

FourierCurve::FourierCurve(std::vector<double> amplitudes) : amplitudes_(std::move(amplitudes))
{
  double sum = 0.0;
  for (double a : amplitudes_)
    sum += std::abs(a);
  if (!(sum < 1.0))
    throw Error(ErrorCode::InvalidArgument, "fourier curve needs Σ|a_m| < 1 to stay star-shaped");
}

std::array<double, 4> FourierCurve::radial(double t) const
{
  std::array<double, 4> r = {1.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < amplitudes_.size(); ++i)
  {
    const double m = static_cast<double>(i + 1);
    const double c = std::cos(m * t), s = std::sin(m * t), a = amplitudes_[i];
    r[0] += a * c;
    r[1] -= a * m * s;
    r[2] -= a * m * m * c;
    r[3] += a * m * m * m * s;
  }
  return r;
}

double FourierCurve::period() const { return kTwoPi; }

Point FourierCurve::d0(double t) const
{
  const auto r = radial(t);
  return r[0] * Point(std::cos(t), std::sin(t));
}

Point FourierCurve::d1(double t) const
{
  const auto r = radial(t);
  const Point e(std::cos(t), std::sin(t)), p(-std::sin(t), std::cos(t));
  return r[1] * e + r[0] * p;
}

Point FourierCurve::d2(double t) const
{
  const auto r = radial(t);
  const Point e(std::cos(t), std::sin(t)), p(-std::sin(t), std::cos(t));
  return (r[2] - r[0]) * e + 2.0 * r[1] * p;
}

Point FourierCurve::d3(double t) const
{
  const auto r = radial(t);
  const Point e(std::cos(t), std::sin(t)), p(-std::sin(t), std::cos(t));
  return (r[3] - 3.0 * r[1]) * e + (3.0 * r[2] - r[0]) * p;
}

std::string FourierCurve::describe() const
{
  std::string out = "fourier(";
  for (std::size_t i = 0; i < amplitudes_.size(); ++i)
    out += (i ? "," : "") + fmt(amplitudes_[i]);
  return out + ")";
}

ReversedCurve::ReversedCurve(std::shared_ptr<const ParametricCurve> base) : base_(std::move(base)) {}
double ReversedCurve::period() const { return base_->period(); }
Point ReversedCurve::d0(double t) const { return base_->d0(period() - t); }
Point ReversedCurve::d1(double t) const { return -base_->d1(period() - t); }
Point ReversedCurve::d2(double t) const { return base_->d2(period() - t); }
Point ReversedCurve::d3(double t) const { return -base_->d3(period() - t); }
std::string ReversedCurve::describe() const { return "reversed(" + base_->describe() + ")"; }

// --- arclength view -------------------------------------------------------

struct BoundaryCurve::Impl
{
  std::shared_ptr<const ParametricCurve> raw;
  std::string name;
  std::vector<double> t_nodes; // uniform in the raw parameter
  std::vector<double> s_nodes; // cumulative arclength at t_nodes
  double length = 0.0;
  double reach = 0.0;
  double area = 0.0;
  Point centroid = Point::Zero();

  double speed(double t) const { return raw->d1(t).norm(); }

  double arclength_to(double t, std::size_t k) const
  {
    return s_nodes[k] + quad::gauss_legendre10([this](double x) { return speed(x); }, t_nodes[k], t);
  }

  double parameter(double s) const
  {
    const std::size_t segments = t_nodes.size() - 1;
    auto it = std::upper_bound(s_nodes.begin(), s_nodes.end(), s);
    std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - s_nodes.begin() - 1));
    k = std::min(k, segments - 1);
    const double frac = (s - s_nodes[k]) / (s_nodes[k + 1] - s_nodes[k]);
    double t = t_nodes[k] + frac * (t_nodes[k + 1] - t_nodes[k]);
    for (int iter = 0; iter < 20; ++iter)
    {
      const double step = (arclength_to(t, k) - s) / speed(t);
      t -= step;
      if (std::abs(step) < 1e-15 * raw->period())
        break;
    }
    return t;
  }
};

BoundaryCurve::BoundaryCurve(std::shared_ptr<const ParametricCurve> raw)
{
  if (!raw)
    throw Error(ErrorCode::InvalidArgument, "null curve");
  auto impl = std::make_shared<Impl>();
  const double period = raw->period();
  // the orientation flip is normalized away, so it is not part of the identity
  impl->name = raw->describe();

  const double signed_area =
      0.5 * quad::integrate([&](double t) { return cross(raw->d0(t), raw->d1(t)); }, 0.0, period);
  if (signed_area < 0.0)
  {
    raw = std::make_shared<ReversedCurve>(raw);
  }
  impl->raw = raw;

  constexpr std::size_t kSegments = 512;
  impl->t_nodes.resize(kSegments + 1);
  impl->s_nodes.resize(kSegments + 1);
  impl->s_nodes[0] = 0.0;
  for (std::size_t k = 0; k <= kSegments; ++k)
    impl->t_nodes[k] = period * static_cast<double>(k) / kSegments;
  for (std::size_t k = 0; k < kSegments; ++k)
  {
    const double piece = quad::integrate([&](double t) { return raw->d1(t).norm(); },
                                         impl->t_nodes[k], impl->t_nodes[k + 1], 1e-15);
    impl->s_nodes[k + 1] = impl->s_nodes[k] + piece;
  }
  impl->length = impl->s_nodes.back();

  impl->area = std::abs(signed_area);
  const double cx = quad::integrate(
      [&](double t) { return 0.5 * raw->d0(t).x() * raw->d0(t).x() * raw->d1(t).y(); }, 0.0, period);
  const double cy = quad::integrate(
      [&](double t) { return -0.5 * raw->d0(t).y() * raw->d0(t).y() * raw->d1(t).x(); }, 0.0, period);
  impl->centroid = Point(cx, cy) / impl->area;

  impl_ = impl;

  double kmax = 0.0;
  constexpr int kSamples = 8192;
  for (int i = 0; i < kSamples; ++i)
    kmax = std::max(kmax, std::abs(curvature(impl->length * i / kSamples)));
  impl->reach = kmax > 0.0 ? 1.0 / kmax : std::numeric_limits<double>::infinity();
}

BoundaryCurve BoundaryCurve::circle(double radius)
{
  return BoundaryCurve(std::make_shared<CircleCurve>(radius));
}

BoundaryCurve BoundaryCurve::ellipse(double a, double b)
{
  return BoundaryCurve(std::make_shared<EllipseCurve>(a, b));
}

BoundaryCurve BoundaryCurve::fourier(std::vector<double> amplitudes)
{
  return BoundaryCurve(std::make_shared<FourierCurve>(std::move(amplitudes)));
}

double BoundaryCurve::length() const { return impl_->length; }
double BoundaryCurve::reach() const { return impl_->reach; }
double BoundaryCurve::enclosed_area() const { return impl_->area; }
Point BoundaryCurve::centroid() const { return impl_->centroid; }
double BoundaryCurve::wrap(double s) const { return positive_mod(s, impl_->length); }
double BoundaryCurve::raw_parameter(double s) const { return impl_->parameter(wrap(s)); }

std::string BoundaryCurve::describe() const { return impl_->name; }

Point BoundaryCurve::position(double s) const { return impl_->raw->d0(raw_parameter(s)); }

Eigen::Vector2d BoundaryCurve::tangent(double s) const
{
  return impl_->raw->d1(raw_parameter(s)).normalized();
}

Eigen::Vector2d BoundaryCurve::inward_normal(double s) const { return rotate90(tangent(s)); }

double BoundaryCurve::curvature(double s) const
{
  const double t = raw_parameter(s);
  const Eigen::Vector2d x1 = impl_->raw->d1(t);
  const double v = x1.norm();
  return cross(x1, impl_->raw->d2(t)) / (v * v * v);
}

double BoundaryCurve::curvature_derivative(double s) const
{
  const double t = raw_parameter(s);
  const Eigen::Vector2d x1 = impl_->raw->d1(t), x2 = impl_->raw->d2(t), x3 = impl_->raw->d3(t);
  const double v = x1.norm();
  const double c = cross(x1, x2);
  const double dv = x1.dot(x2) / v;
  const double dk_dt = cross(x1, x3) / (v * v * v) - 3.0 * c * dv / (v * v * v * v);
  return dk_dt / v;
}

// --- layer description ----------------------------------------------------

ThicknessProfile::ThicknessProfile(double c0, std::vector<double> c, std::vector<double> s)
  : c0_(c0), cos_(std::move(c)), sin_(std::move(s))
{
}

ThicknessProfile ThicknessProfile::constant(double value) { return {value, {}, {}}; }

ThicknessProfile ThicknessProfile::fourier(double c0, std::vector<double> cos_terms,
                                           std::vector<double> sin_terms)
{
  return {c0, std::move(cos_terms), std::move(sin_terms)};
}

double ThicknessProfile::value(double s, double period) const
{
  double g = c0_;
  const double u = kTwoPi * s / period;
  for (std::size_t m = 0; m < cos_.size(); ++m)
    g += cos_[m] * std::cos((m + 1) * u);
  for (std::size_t m = 0; m < sin_.size(); ++m)
    g += sin_[m] * std::sin((m + 1) * u);
  return g;
}

double ThicknessProfile::d1(double s, double period) const
{
  double g = 0.0;
  const double w = kTwoPi / period, u = w * s;
  for (std::size_t m = 0; m < cos_.size(); ++m)
    g -= cos_[m] * (m + 1) * w * std::sin((m + 1) * u);
  for (std::size_t m = 0; m < sin_.size(); ++m)
    g += sin_[m] * (m + 1) * w * std::cos((m + 1) * u);
  return g;
}

double ThicknessProfile::d2(double s, double period) const
{
  double g = 0.0;
  const double w = kTwoPi / period, u = w * s;
  for (std::size_t m = 0; m < cos_.size(); ++m)
  {
    const double f = (m + 1) * w;
    g -= cos_[m] * f * f * std::cos((m + 1) * u);
  }
  for (std::size_t m = 0; m < sin_.size(); ++m)
  {
    const double f = (m + 1) * w;
    g -= sin_[m] * f * f * std::sin((m + 1) * u);
  }
  return g;
}

double ThicknessProfile::max_value(double period) const
{
  if (is_constant())
    return c0_;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4096; ++i)
    best = std::max(best, value(period * i / 4096.0, period));
  return best;
}

double ThicknessProfile::min_value(double period) const
{
  if (is_constant())
    return c0_;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4096; ++i)
    best = std::min(best, value(period * i / 4096.0, period));
  return best;
}

std::string ThicknessProfile::describe() const
{
  std::string out = "g(" + fmt(c0_);
  for (double c : cos_)
    out += ",c" + fmt(c);
  for (double s : sin_)
    out += ",s" + fmt(s);
  return out + ")";
}

RefractiveIndex RefractiveIndex::constant(double value) { return {value, value}; }
RefractiveIndex RefractiveIndex::across_layer(double outer, double inner) { return {outer, inner}; }

double RefractiveIndex::value(double xi_fraction) const
{
  return outer_ + (inner_ - outer_) * std::clamp(xi_fraction, 0.0, 1.0);
}

double RefractiveIndex::lower() const { return std::min(outer_, inner_); }
double RefractiveIndex::upper() const { return std::max(outer_, inner_); }

std::string RefractiveIndex::describe() const
{
  return is_constant() ? "n(" + fmt(outer_) + ")" : "n(" + fmt(outer_) + "->" + fmt(inner_) + ")";
}

LayerConfig::LayerConfig(double delta0, ThicknessProfile g, RefractiveIndex n)
  : delta0_(delta0), g_(std::move(g)), n_(std::move(n))
{
  if (!(delta0_ > 0.0) || !std::isfinite(delta0_))
    throw Error(ErrorCode::InvalidLayer, "delta0 must be positive");
  // g is checked over a unit period; positivity does not depend on s₀
  if (!(g_.min_value(1.0) > 0.0))
    throw Error(ErrorCode::InvalidLayer, "thickness profile must be strictly positive");
  if (!(n_.lower() > 0.0) || !(n_.upper() < 1.0))
    throw Error(ErrorCode::InvalidLayer, "refractive index must satisfy 0 < n < 1");
}

double LayerConfig::thickness(const BoundaryCurve &curve, double s) const
{
  return delta0_ * g_.value(s, curve.length());
}

double LayerConfig::max_thickness(const BoundaryCurve &curve) const
{
  return delta0_ * g_.max_value(curve.length());
}

void LayerConfig::validate_against(const BoundaryCurve &curve) const
{
  if (!(max_thickness(curve) < curve.reach()))
    throw Error(ErrorCode::OffsetTooDeep, "max δ₀g = " + fmt(max_thickness(curve)) +
                                              " reaches η₀ = " + fmt(curve.reach()));
}

std::string LayerConfig::describe() const
{
  return "layer(d0=" + fmt(delta0_) + "," + g_.describe() + "," + n_.describe() + ")";
}

BoundaryCurve offset_curve(const BoundaryCurve &curve, const LayerConfig &layer)
{
  layer.validate_against(curve);
  return BoundaryCurve(std::make_shared<OffsetCurve>(curve, layer));
}

// --- tube coordinates -----------------------------------------------------

TubeMap::TubeMap(BoundaryCurve curve) : curve_(std::move(curve)), reach_(curve_.reach())
{
  constexpr int kSeeds = 512;
  seed_s_.resize(kSeeds);
  seed_x_.resize(kSeeds);
  for (int i = 0; i < kSeeds; ++i)
  {
    seed_s_[i] = curve_.length() * i / kSeeds;
    seed_x_[i] = curve_.position(seed_s_[i]);
  }
}

Point TubeMap::forward(double s, double eta) const
{
  return curve_.position(s) + eta * curve_.inward_normal(s);
}

double TubeMap::jacobian(double s, double eta) const { return 1.0 - eta * curve_.curvature(s); }

TubeCoordinates TubeMap::inverse(const Point &x, std::optional<double> s_guess) const
{
  double s;
  if (s_guess)
  {
    s = *s_guess;
  }
  else
  {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < seed_x_.size(); ++i)
    {
      const double d = (seed_x_[i] - x).squaredNorm();
      if (d < best_d)
      {
        best_d = d;
        best = i;
      }
    }
    s = seed_s_[best];
  }

  for (int iter = 0; iter < 50; ++iter)
  {
    const Eigen::Vector2d r = x - curve_.position(s);
    const double along = r.dot(curve_.tangent(s));
    const double eta = r.dot(curve_.inward_normal(s));
    const double denom = 1.0 - curve_.curvature(s) * eta;
    if (!(denom > 0.0))
      break;
    const double step = along / denom;
    s += step;
    if (std::abs(step) < 1e-14 * curve_.length())
    {
      s = curve_.wrap(s);
      return {s, (x - curve_.position(s)).dot(curve_.inward_normal(s))};
    }
  }
  throw Error(ErrorCode::InversionFailed, "point is outside the tube neighbourhood");
}

TubeMap tube_map(const BoundaryCurve &curve) { return TubeMap(curve); }

} // namespace thinspec

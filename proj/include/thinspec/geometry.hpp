// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_GEOMETRY_HPP
#define THINSPEC_GEOMETRY_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace thinspec
{

using Point = Eigen::Vector2d;

// A closed curve given by a smooth periodic map t -> x(t) on [0, period).
// Derivatives are with respect to t and are available in closed form for
// the built-in shapes.
class ParametricCurve
{
public:
  virtual ~ParametricCurve() = default;
  virtual double period() const = 0;
  virtual Point d0(double t) const = 0;
  virtual Point d1(double t) const = 0;
  virtual Point d2(double t) const = 0;
  virtual Point d3(double t) const = 0;
  // Canonical text used for hashing and provenance headers.
  virtual std::string describe() const = 0;
};

class CircleCurve final : public ParametricCurve
{
public:
  explicit CircleCurve(double radius, Point center = Point::Zero());
  double period() const override;
  Point d0(double t) const override;
  Point d1(double t) const override;
  Point d2(double t) const override;
  Point d3(double t) const override;
  std::string describe() const override;
  double radius() const { return radius_; }

private:
  double radius_;
  Point center_;
};

class EllipseCurve final : public ParametricCurve
{
public:
  EllipseCurve(double a, double b);
  double period() const override;
  Point d0(double t) const override;
  Point d1(double t) const override;
  Point d2(double t) const override;
  Point d3(double t) const override;
  std::string describe() const override;

private:
  double a_, b_;
};

// Polar curve r(θ) = 1 + Σ_m a_m cos(mθ), m = 1, 2, ...; amplitudes[0] is a_1.
class FourierCurve final : public ParametricCurve
{
public:
  explicit FourierCurve(std::vector<double> amplitudes);
  double period() const override;
  Point d0(double t) const override;
  Point d1(double t) const override;
  Point d2(double t) const override;
  Point d3(double t) const override;
  std::string describe() const override;

private:
  // r and its first three θ-derivatives
  std::array<double, 4> radial(double t) const;
  std::vector<double> amplitudes_;
};

// Traverses another curve backwards; used to exercise orientation
// normalization.
class ReversedCurve final : public ParametricCurve
{
public:
  explicit ReversedCurve(std::shared_ptr<const ParametricCurve> base);
  double period() const override;
  Point d0(double t) const override;
  Point d1(double t) const override;
  Point d2(double t) const override;
  Point d3(double t) const override;
  std::string describe() const override;

private:
  std::shared_ptr<const ParametricCurve> base_;
};

/// Unit-speed view of a closed curve.
///
/// The arclength reparameterization is computed once at construction. The
/// orientation is normalized to counter-clockwise, so the inward normal is
/// the tangent rotated by +90 degrees and `curvature` is positive on convex
/// domains: dτ/ds = κ ν with ν inward, κ = 1/R on a circle of radius R.
///
/// Immutable and cheap to copy; queries are pure and thread safe.
class BoundaryCurve
{
public:
  explicit BoundaryCurve(std::shared_ptr<const ParametricCurve> raw);

  static BoundaryCurve circle(double radius);
  static BoundaryCurve ellipse(double a, double b);
  static BoundaryCurve fourier(std::vector<double> amplitudes);

  double length() const;
  Point position(double s) const;
  Eigen::Vector2d tangent(double s) const;
  Eigen::Vector2d inward_normal(double s) const;
  double curvature(double s) const;
  double curvature_derivative(double s) const;
  /// η₀ = inf 1/|κ|.
  double reach() const;
  double enclosed_area() const;
  Point centroid() const;
  /// Parameter of the underlying raw curve at arclength s.
  double raw_parameter(double s) const;
  /// Reduces s into [0, length).
  double wrap(double s) const;
  std::string describe() const;

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Positive periodic thickness profile g(s), either constant or a Fourier
/// series in u = s/s₀: g = c0 + Σ_m (a_m cos 2πmu + b_m sin 2πmu).
class ThicknessProfile
{
public:
  static ThicknessProfile constant(double value);
  static ThicknessProfile fourier(double c0, std::vector<double> cos_terms,
                                  std::vector<double> sin_terms);

  double value(double s, double period) const;
  double d1(double s, double period) const;
  double d2(double s, double period) const;
  double max_value(double period) const;
  double min_value(double period) const;
  bool is_constant() const { return cos_.empty() && sin_.empty(); }
  double mean() const { return c0_; }
  std::string describe() const;

private:
  ThicknessProfile(double c0, std::vector<double> c, std::vector<double> s);
  double c0_;
  std::vector<double> cos_, sin_;
};

/// Refractive index of the coating as a function of tube coordinates
/// (s, ξ) with ξ ∈ [0, g(s)]; constant, or linear across the layer from
/// `outer` at Γ to `inner` at Γ_δ.
class RefractiveIndex
{
public:
  static RefractiveIndex constant(double value);
  static RefractiveIndex across_layer(double outer, double inner);

  double value(double xi_fraction) const;
  double lower() const;
  double upper() const;
  bool is_constant() const { return outer_ == inner_; }
  std::string describe() const;

private:
  RefractiveIndex(double outer, double inner) : outer_(outer), inner_(inner) {}
  double outer_, inner_;
};

/// Coating description: layer thickness δ(s) = δ₀·g(s) and index n.
class LayerConfig
{
public:
  /// Throws InvalidLayer unless δ₀ > 0, g > 0 and 0 < n_* ≤ n^* < 1.
  LayerConfig(double delta0, ThicknessProfile g, RefractiveIndex n);

  double delta0() const { return delta0_; }
  const ThicknessProfile &profile() const { return g_; }
  const RefractiveIndex &index() const { return n_; }
  double thickness(const BoundaryCurve &curve, double s) const;
  double max_thickness(const BoundaryCurve &curve) const;
  double n_lower() const { return n_.lower(); }
  double n_upper() const { return n_.upper(); }
  /// Throws OffsetTooDeep unless max δ₀g < η₀.
  void validate_against(const BoundaryCurve &curve) const;
  LayerConfig with_delta0(double delta0) const { return {delta0, g_, n_}; }
  std::string describe() const;

private:
  double delta0_;
  ThicknessProfile g_;
  RefractiveIndex n_;
};

/// Γ_δ = { x_Γ(s) + δ₀g(s)ν(s) }, parameterized by the parent arclength.
BoundaryCurve offset_curve(const BoundaryCurve &curve, const LayerConfig &layer);

struct TubeCoordinates
{
  double s;
  double eta;
};

/// Tube-coordinate diffeomorphism (s, η) -> x_Γ(s) + η ν(s) on |η| < η₀.
class TubeMap
{
public:
  explicit TubeMap(BoundaryCurve curve);

  const BoundaryCurve &curve() const { return curve_; }
  double reach() const { return reach_; }
  Point forward(double s, double eta) const;
  /// Area factor of the map: 1 − ηκ(s) with the convex-positive κ.
  double jacobian(double s, double eta) const;
  /// Newton projection onto Γ; throws InversionFailed after 50 iterations.
  TubeCoordinates inverse(const Point &x, std::optional<double> s_guess = std::nullopt) const;

private:
  BoundaryCurve curve_;
  double reach_;
  std::vector<double> seed_s_;
  std::vector<Point> seed_x_;
};

TubeMap tube_map(const BoundaryCurve &curve);

} // namespace thinspec

#endif // THINSPEC_GEOMETRY_HPP

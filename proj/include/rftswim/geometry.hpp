#pragma once

#include <span>
#include <vector>

#include "rftswim/common.hpp"

namespace rftswim {

/// Relative tolerance for discrete unit speed and round trips.
inline constexpr double geometry_tolerance = 1e-6;

/// Node spacing of a uniform grid with n nodes on [0, length].
double grid_spacing(double length, std::size_t n);

/// Composite trapezoid rule on uniform spacing h.
double trapezoid(std::span<const double> f, double h);
Vec2 trapezoid(std::span<const Vec2> f, double h);

/// Planar curve sampled at s_i = i*L/(N-1), parametrized by arc length.
///
/// The constructor validates discrete unit speed: every chord has length at
/// most h*(1+tol) and at least h*(cos(turn) - tol), where turn is the larger
/// turning angle at its two ends. Chords of exactly sampled smooth curves and
/// of curves built from angle profiles both pass.
class ArcCurve {
 public:
  /// Marks points that are arc-length samples by construction, e.g. rebuilt
  /// from node angles. Poorly resolved angle profiles shorten chords in ways
  /// the turning angles cannot reveal, so such curves skip the speed test.
  struct Trusted {};

  ArcCurve(double length, std::vector<Vec2> points);
  ArcCurve(double length, std::vector<Vec2> points, Trusted);

  double length() const { return length_; }
  std::size_t size() const { return points_.size(); }
  double spacing() const { return grid_spacing(length_, points_.size()); }
  double s(std::size_t i) const { return spacing() * static_cast<double>(i); }

  const std::vector<Vec2>& points() const { return points_; }
  const Vec2& operator[](std::size_t i) const { return points_[i]; }

  /// Image under p -> rot * p + shift.
  ArcCurve transformed(const Mat2& rot, const Vec2& shift) const;

 private:
  double length_;
  std::vector<Vec2> points_;
};

/// Tangent angle at each node plus the data fixing the rigid placement.
struct AngleProfile {
  double length = 1.0;
  Vec2 base_point = Vec2::Zero();
  double base_angle_offset = 0.0;
  std::vector<double> theta;

  std::size_t size() const { return theta.size(); }
  double spacing() const { return grid_spacing(length, theta.size()); }
};

struct CurvatureProfile {
  double length = 1.0;
  std::vector<double> kappa;
};

/// Integrates unit tangents at theta + offset from the base point.
ArcCurve angle_to_curve(const AngleProfile& profile);

/// Recovers node angles whose trapezoid reconstruction reproduces the chords.
///
/// Chord directions are unwrapped continuously (branch minimizing the jump,
/// ties toward +pi). Node angles then satisfy (theta_i + theta_{i+1})/2 = chord
/// angle, with the remaining alternating freedom removed by least squares on
/// second differences.
AngleProfile curve_to_angle(const ArcCurve& curve);

/// d theta / ds by centered differences, second order one-sided at the ends.
CurvatureProfile curvature_of(const AngleProfile& profile);

/// Unit tangents of a curve, taken from its recovered node angles.
std::vector<Vec2> tangents_of(const ArcCurve& curve);

/// Straight segment of given length from start along direction angle.
ArcCurve straight_segment(double length, std::size_t n, const Vec2& start = Vec2::Zero(),
                          double direction = 0.0);

}  // namespace rftswim

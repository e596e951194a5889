#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "rftswim/geometry.hpp"

namespace rftswim {

/// Which one-sided limit to take at a kink in time.
enum class Side { Before, After };

/// Body-frame shape and its time derivative at one instant.
struct ShapeState {
  std::vector<double> theta;      // tangent angle, frame rotation included
  std::vector<double> theta_dot;
  std::vector<Vec2> points;
  std::vector<Vec2> velocity;
  std::vector<Vec2> tangent;

  void resize(std::size_t n);
  std::size_t size() const { return points.size(); }
};

/// Rebuilds points, velocities and tangents from theta and theta_dot by
/// cumulative trapezoid sums away from the anchor node.
void integrate_angles(ShapeState& s, double h, std::size_t anchor, const Vec2& anchor_point,
                      const Vec2& anchor_velocity = Vec2::Zero());

/// Time-parametrized body shape on [0, duration].
///
/// Cheap to copy: evaluation closures are shared. Kinks are the interior times
/// where the rate may jump; integrators align steps to them.
class ShapeHistory {
 public:
  using StateFn = std::function<void(double t, Side side, ShapeState& out)>;
  using AngleFn = std::function<void(double t, Side side, std::span<double> theta, std::span<double> theta_dot)>;

  /// Rigid placement of an angle-based body frame.
  struct Frame {
    std::size_t anchor = 0;
    Vec2 anchor_point = Vec2::Zero();
    double angle = 0.0;
  };

  static ShapeHistory from_angles(double length, std::size_t nodes, double duration, AngleFn fn, Frame frame,
                                  std::vector<double> kinks = {});
  static ShapeHistory stationary(const AngleProfile& shape, double duration);
  /// Linear interpolation between sampled profiles; rates are interval slopes.
  static ShapeHistory from_samples(const std::vector<double>& times, const std::vector<AngleProfile>& profiles);
  /// Pieces played back to back. A junction time belongs to the earlier piece
  /// when evaluated Before and to the later one when evaluated After.
  static ShapeHistory concatenate(const std::vector<ShapeHistory>& pieces);

  double length() const { return length_; }
  std::size_t nodes() const { return nodes_; }
  double duration() const { return duration_; }
  double spacing() const { return grid_spacing(length_, nodes_); }
  const std::vector<double>& kinks() const { return kinks_; }

  void evaluate(double t, Side side, ShapeState& out) const;
  ShapeState state(double t, Side side = Side::After) const;
  ArcCurve curve(double t) const;
  AngleProfile profile(double t) const;

  /// Same shapes played over a new duration; rates scale inversely.
  ShapeHistory rescaled(double duration) const;
  /// Shape at phi(t) with rate multiplied by phi'(t). phi must increase
  /// strictly and map [0, T] onto itself.
  ShapeHistory reparametrized(std::function<double(double)> phi, std::function<double(double)> dphi) const;
  /// Played backwards in time.
  ShapeHistory reversed() const;

 private:
  ShapeHistory(double length, std::size_t nodes, double duration, StateFn fn, std::vector<double> kinks);

  double length_;
  std::size_t nodes_;
  double duration_;
  std::shared_ptr<const StateFn> fn_;
  std::vector<double> kinks_;
};

}  // namespace rftswim

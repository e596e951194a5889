#pragma once

#include <span>
#include <vector>

#include "rftswim/shape_history.hpp"

namespace rftswim {

/// Tangential and normal drag coefficients.
///
/// Strict mode requires 0 < c_tau < c_nu. Relaxed mode admits any positive
/// pair, including the isotropic case.
struct DragCoefficients {
  double c_tau = 1.0;
  double c_nu = 2.0;
  bool relaxed = false;

  void validate() const;
};

/// Local drag tensor K = c_tau t t^T + c_nu n n^T for a unit tangent t.
Mat2 drag_tensor(const Vec2& tangent, const DragCoefficients& drag);

/// Resistance of the body to rigid motion about the body-frame origin.
struct GrandResistance {
  Mat2 A = Mat2::Zero();
  Vec2 b = Vec2::Zero();
  double c = 0.0;

  Eigen::Matrix3d matrix() const;
};

/// Drag force and torque produced by shape change alone.
struct ShapeForcing {
  Vec2 force = Vec2::Zero();
  double torque = 0.0;
};

struct BodyVelocity {
  Vec2 v = Vec2::Zero();
  double omega = 0.0;
};

inline constexpr double max_resistance_condition = 1e12;

GrandResistance grand_resistance(const ArcCurve& shape, const DragCoefficients& drag);
GrandResistance grand_resistance(const ShapeState& shape, double h, const DragCoefficients& drag);

/// Throws GridMismatch unless one velocity per node is given.
ShapeForcing shape_forcing(const ArcCurve& shape, std::span<const Vec2> velocity, const DragCoefficients& drag);
ShapeForcing shape_forcing(const ShapeState& shape, double h, const DragCoefficients& drag);

/// Solves the force and torque balance for the rigid velocity in the body
/// frame. Throws SingularResistance when the system is ill conditioned.
BodyVelocity body_velocities(const GrandResistance& r, const ShapeForcing& f);
BodyVelocity body_velocities(const ShapeState& shape, double h, const DragCoefficients& drag);

struct RigidState {
  Vec2 x = Vec2::Zero();
  double theta = 0.0;
};

/// Lab-frame rates together with the body-frame solve they came from.
struct RigidRate {
  Vec2 x_dot = Vec2::Zero();
  double theta_dot = 0.0;
  BodyVelocity body;
};

/// Time nodes of a simulated maneuver.
///
/// Lab curves are not stored; node j is rebuilt as x_j + R(theta_j) xi(., t_j)
/// from the shape history, evaluated on the recorded side of any kink.
class Trajectory {
 public:
  Trajectory(ShapeHistory history, DragCoefficients drag, std::vector<double> times, std::vector<RigidState> states,
             std::vector<RigidRate> rates, std::vector<Side> sides);

  std::size_t size() const { return times_.size(); }
  const ShapeHistory& history() const { return history_; }
  const DragCoefficients& drag() const { return drag_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<RigidState>& states() const { return states_; }
  const std::vector<RigidRate>& rates() const { return rates_; }
  const std::vector<Side>& sides() const { return sides_; }
  const RigidState& final_state() const { return states_.back(); }

  ShapeState body_state(std::size_t j) const;
  ArcCurve body_curve(std::size_t j) const;
  ArcCurve lab_curve(std::size_t j) const;
  /// Lab velocity of every body node at time node j.
  std::vector<Vec2> lab_velocity(std::size_t j) const;

  /// Same nodes with the states replaced, e.g. to probe the residual.
  Trajectory with_states(std::vector<RigidState> states) const;

  /// Stages played back to back. The first node of each later stage is
  /// dropped because it coincides with the last node of the previous one.
  static Trajectory concatenate(const std::vector<Trajectory>& stages);

 private:
  ShapeHistory history_;
  DragCoefficients drag_;
  std::vector<double> times_;
  std::vector<RigidState> states_;
  std::vector<RigidRate> rates_;
  std::vector<Side> sides_;
};

/// Fixed-step RK4 for x' = R(theta) v(t), theta' = omega(t).
///
/// The step count is shared among the intervals between kinks in proportion
/// to their length, so no step straddles a kink.
Trajectory integrate_motion(const ShapeHistory& history, const RigidState& initial, const DragCoefficients& drag,
                            std::size_t steps);

/// Steps for a history of the given conventional duration at M steps per unit.
std::size_t steps_for(double units, std::size_t steps_per_unit);

struct BalanceResidual {
  double force = 0.0;   // |F| / int |f| ds
  double torque = 0.0;  // |M| / (L int |f| ds), torque about the lab origin
};

/// Net lab-frame drag force and torque at one node, recomputed from the lab
/// curve and its velocity.
BalanceResidual balance_residual_at(const Trajectory& traj, std::size_t j);
/// Worst node of the trajectory.
BalanceResidual balance_residual(const Trajectory& traj);

/// int <K chi_dot, chi_dot> ds at each node.
std::vector<double> power_density(const Trajectory& traj);
/// int |chi_dot|^2 ds at each node.
std::vector<double> speed_density(const Trajectory& traj);
/// Time integral of the node values by the trapezoid rule.
double time_integral(const std::vector<double>& times, const std::vector<double>& values);
/// Dissipated power of the trajectory: double integral over body and time.
double power(const Trajectory& traj);

}  // namespace rftswim

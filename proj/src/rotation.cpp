#include <algorithm>
#include <limits>

#include "bump_wave.hpp"

namespace rftswim {

namespace {

std::size_t middle_node(std::size_t nodes) {
  if (nodes % 2 == 0) throw Error(ErrorCode::InvalidArgument, "rotation needs an odd node count");
  return (nodes - 1) / 2;
}

void check_setup(const RotationSetup& setup) {
  if (!(setup.half_length > 0.0)) throw Error(ErrorCode::InvalidArgument, "half length must be positive");
  if (!(setup.ramp_angle > 0.0) || setup.ramp_angle > pi / 6 + 1e-15)
    throw Error(ErrorCode::InvalidArgument, "ramp angle must lie in (0, pi/6]");
  if (!(setup.margin >= 0.0) || !(setup.arm_length() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "margin leaves no straight arm");
}

/// Arm angle at distance sigma from the centre: flat, smoothstep, flat.
double ramp_profile(const RotationSetup& setup, double sigma) {
  const double q = 0.25 * setup.half_length;
  const double u = std::clamp((sigma - q) / q, 0.0, 1.0);
  return setup.ramp_angle * u * u * (3.0 - 2.0 * u);
}

/// Ramp angles on the right half (index j at distance j h); the left half
/// mirrors them so the shape stays odd about the centre.
std::vector<double> half_ramp(const RotationSetup& setup, std::size_t nodes) {
  const std::size_t m = middle_node(nodes);
  const double h = grid_spacing(2.0 * setup.half_length, nodes);
  std::vector<double> eta(m + 1);
  for (std::size_t j = 0; j <= m; ++j) eta[j] = ramp_profile(setup, h * static_cast<double>(j));
  return eta;
}

void mirror(std::size_t m, std::span<double> v) {
  for (std::size_t j = 1; j <= m; ++j) v[m - j] = v[m + j];
}

ShapeHistory::Frame centred_frame(std::size_t nodes) { return {middle_node(nodes), Vec2::Zero(), 0.0}; }

// Point at distance sigma along the right half, interpolated between nodes.
Vec2 right_point(const ShapeState& s, std::size_t m, double h, double sigma) {
  const double u = sigma / h;
  const std::size_t j = std::min(m - 1, static_cast<std::size_t>(u));
  const double w = u - static_cast<double>(j);
  return (1.0 - w) * s.points[m + j] + w * s.points[m + j + 1];
}

}  // namespace

BumpSpec default_rotation_bump(const RotationSetup& setup) {
  BumpSpec spec;
  spec.half_length = 0.2 * setup.half_length;
  return spec;
}

ShapeHistory rotation_ramp(const RotationSetup& setup, std::size_t nodes) {
  check_setup(setup);
  const std::size_t m = middle_node(nodes);
  const auto eta = half_ramp(setup, nodes);
  auto fn = [eta, m](double t, Side, std::span<double> theta, std::span<double> theta_dot) {
    for (std::size_t j = 0; j <= m; ++j) {
      theta[m + j] = t * eta[j];
      theta_dot[m + j] = eta[j];
    }
    mirror(m, theta);
    mirror(m, theta_dot);
  };
  ShapeHistory ramp = ShapeHistory::from_angles(2.0 * setup.half_length, nodes, 1.0, fn, centred_frame(nodes));
  if (!(arm_lever(setup, nodes) > 1e-6))
    throw Error(ErrorCode::RampDegenerate, "arm lines pass through the centre; raise the ramp angle");
  return ramp;
}

double arm_lever(const RotationSetup& setup, std::size_t nodes) {
  check_setup(setup);
  const std::size_t m = middle_node(nodes);
  const auto eta = half_ramp(setup, nodes);
  ShapeState s;
  s.resize(nodes);
  for (std::size_t j = 0; j <= m; ++j) {
    s.theta[m + j] = eta[j];
    s.theta_dot[m + j] = 0.0;
  }
  mirror(m, s.theta);
  mirror(m, s.theta_dot);
  integrate_angles(s, grid_spacing(2.0 * setup.half_length, nodes), m, Vec2::Zero());
  // Every point of the straight arm gives the same value; the tip is on it.
  return cross(s.points.back(), unit(setup.ramp_angle));
}

ShapeHistory rotation_cycle(const RotationSetup& setup, const BumpSpec& spec, std::size_t nodes) {
  check_setup(setup);
  spec.validate(setup.arm_length());
  const std::size_t m = middle_node(nodes);
  const double h = grid_spacing(2.0 * setup.half_length, nodes);
  const auto eta = half_ramp(setup, nodes);
  const double a = setup.arm_start(), b = setup.arm_end();
  auto fn = [eta, m, h, a, b, spec](double t, Side side, std::span<double> theta, std::span<double> theta_dot) {
    for (std::size_t j = 0; j <= m; ++j) {
      theta[m + j] = eta[j];
      theta_dot[m + j] = 0.0;
    }
    detail::add_bump(spec, detail::bump_phase(spec, a, b, t, side), 0.0, h, theta.subspan(m), theta_dot.subspan(m));
    mirror(m, theta);
    mirror(m, theta_dot);
  };
  return ShapeHistory::from_angles(2.0 * setup.half_length, nodes, 1.0, fn, centred_frame(nodes),
                                   {spec.duty, 1.0 - spec.duty});
}

RotationCycleOutcome run_rotation_cycle(const RotationSetup& setup, const BumpSpec& spec,
                                        const DragCoefficients& drag, const Resolution& res) {
  const ShapeHistory cycle = rotation_cycle(setup, spec, res.nodes);
  const Trajectory traj = integrate_motion(cycle, {}, drag, res.steps_per_unit);
  const double h = cycle.spacing();

  RotationCycleOutcome out;
  out.dtheta = traj.final_state().theta;
  out.c_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < traj.size(); ++j) {
    out.max_offset = std::max(out.max_offset, traj.states()[j].x.norm());
    const double c = grand_resistance(traj.body_state(j), h, drag).c;
    out.c_min = std::min(out.c_min, c);
    out.c_max = std::max(out.c_max, c);
  }

  const std::size_t m = middle_node(res.nodes);
  const ShapeState held = cycle.state(0.0);
  const double p = right_point(held, m, h, 0.5 * setup.half_length).norm();
  const double lever = arm_lever(setup, res.nodes);
  const BumpConstants k = bump_constants(setup.arm_length(), spec, drag);
  const double l = spec.half_length;
  out.lower_bound = 2.0 * l * k.force_alpha * lever / out.c_max - 2.0 * p / out.c_min * k.force_beta * l * l;
  return out;
}

RotationPlan plan_rotation(const RotationSetup& setup, double target, const BumpSpec& base,
                           const DragCoefficients& drag, const Resolution& res, RemainderTuning tuning) {
  check_setup(setup);
  base.validate(setup.arm_length());
  RotationPlan plan;
  plan.target = target;
  plan.setup = setup;
  plan.base = base;
  plan.reversed = target < 0.0;
  plan.ramp_rotation =
      integrate_motion(rotation_ramp(setup, res.nodes), {}, drag, res.steps_per_unit).final_state().theta;

  const double tol = plan_tolerance;
  const double a = std::abs(target);
  if (a < tol) return plan;

  auto gain = [&](const BumpSpec& s) {
    return integrate_motion(rotation_cycle(setup, s, res.nodes), {}, drag, res.steps_per_unit).final_state().theta;
  };
  plan.full_rotation = gain(base);
  if (!(plan.full_rotation > 0.0)) throw Error(ErrorCode::TargetUnreachable, "the base bump does not turn the body");
  plan.full_cycles = static_cast<std::size_t>(std::floor(a / plan.full_rotation));
  const double rest = a - static_cast<double>(plan.full_cycles) * plan.full_rotation;
  if (rest < tol) return plan;
  if (plan.full_rotation - rest < tol) {
    ++plan.full_cycles;
    return plan;
  }

  BumpSpec rem = base;
  if (tuning == RemainderTuning::HalfLength) {
    auto f = [&](double l) {
      BumpSpec s = base;
      s.half_length = l;
      return gain(s);
    };
    rem.half_length = detail::solve_remainder(f, 1e-6 * base.half_length, base.half_length, rest, tol);
  } else {
    auto f = [&](double amp) {
      BumpSpec s = base;
      s.amplitude = amp;
      return gain(s);
    };
    rem.amplitude = detail::solve_remainder(f, 1e-9 * base.amplitude, base.amplitude, rest, tol);
  }
  plan.remainder = rem;
  plan.remainder_rotation = gain(rem);
  return plan;
}

ShapeHistory rotation_history(const RotationPlan& plan, std::size_t nodes) {
  const ShapeHistory ramp = rotation_ramp(plan.setup, nodes);
  std::vector<ShapeHistory> pieces{ramp};
  if (plan.full_cycles > 0) {
    ShapeHistory full = rotation_cycle(plan.setup, plan.base, nodes);
    if (plan.reversed) full = full.reversed();
    pieces.insert(pieces.end(), plan.full_cycles, full);
  }
  if (plan.remainder) {
    ShapeHistory rem = rotation_cycle(plan.setup, *plan.remainder, nodes);
    pieces.push_back(plan.reversed ? rem.reversed() : rem);
  }
  pieces.push_back(ramp.reversed());
  return ShapeHistory::concatenate(pieces);
}

}  // namespace rftswim

#include <algorithm>

#include "bump_wave.hpp"

namespace rftswim {

ShapeHistory translation_cycle(double length, const BumpSpec& spec, std::size_t nodes) {
  spec.validate(length);
  const double h = grid_spacing(length, nodes);
  auto fn = [spec, length, h](double t, Side side, std::span<double> theta, std::span<double> theta_dot) {
    std::fill(theta.begin(), theta.end(), 0.0);
    std::fill(theta_dot.begin(), theta_dot.end(), 0.0);
    detail::add_bump(spec, detail::bump_phase(spec, 0.0, length, t, side), 0.0, h, theta, theta_dot);
  };
  return ShapeHistory::from_angles(length, nodes, 1.0, fn, {}, {spec.duty, 1.0 - spec.duty});
}

CycleOutcome run_translation_cycle(double length, const BumpSpec& spec, const DragCoefficients& drag,
                                   const Resolution& res) {
  const Trajectory traj =
      integrate_motion(translation_cycle(length, spec, res.nodes), {}, drag, res.steps_per_unit);
  const RigidState& end = traj.final_state();
  return {end.x.x(), end.x.y(), end.theta};
}

double cycle_displacement(double length, const BumpSpec& spec, const DragCoefficients& drag, const Resolution& res) {
  return run_translation_cycle(length, spec, drag, res).dx1;
}

TranslationPlan plan_translation(double length, double target, const BumpSpec& base, const DragCoefficients& drag,
                                 const Resolution& res, RemainderTuning tuning) {
  base.validate(length);
  TranslationPlan plan;
  plan.target = target;
  plan.length = length;
  plan.base = base;
  plan.reversed = target < 0.0;
  const double tol = plan_tolerance * length;
  const double a = std::abs(target);
  if (a < tol) return plan;

  plan.full_displacement = cycle_displacement(length, base, drag, res);
  if (!(plan.full_displacement > 0.0))
    throw Error(ErrorCode::TargetUnreachable, "the base bump does not move the body forward");
  plan.full_cycles = static_cast<std::size_t>(std::floor(a / plan.full_displacement));
  double rest = a - static_cast<double>(plan.full_cycles) * plan.full_displacement;
  if (rest < tol) return plan;
  if (plan.full_displacement - rest < tol) {
    ++plan.full_cycles;
    return plan;
  }

  BumpSpec rem = base;
  if (tuning == RemainderTuning::HalfLength) {
    auto f = [&](double l) {
      BumpSpec s = base;
      s.half_length = l;
      return cycle_displacement(length, s, drag, res);
    };
    rem.half_length = detail::solve_remainder(f, 1e-6 * base.half_length, base.half_length, rest, tol);
  } else {
    auto f = [&](double amp) {
      BumpSpec s = base;
      s.amplitude = amp;
      return cycle_displacement(length, s, drag, res);
    };
    rem.amplitude = detail::solve_remainder(f, 1e-9 * base.amplitude, base.amplitude, rest, tol);
  }
  plan.remainder = rem;
  plan.remainder_displacement = cycle_displacement(length, rem, drag, res);
  return plan;
}

ShapeHistory translation_history(const TranslationPlan& plan, std::size_t nodes) {
  std::vector<ShapeHistory> cycles;
  if (plan.full_cycles > 0) {
    ShapeHistory full = translation_cycle(plan.length, plan.base, nodes);
    if (plan.reversed) full = full.reversed();
    cycles.assign(plan.full_cycles, full);
  }
  if (plan.remainder) {
    ShapeHistory rem = translation_cycle(plan.length, *plan.remainder, nodes);
    cycles.push_back(plan.reversed ? rem.reversed() : rem);
  }
  if (cycles.empty()) {
    AngleProfile straight{plan.length, Vec2::Zero(), 0.0, std::vector<double>(nodes, 0.0)};
    return ShapeHistory::stationary(straight, 0.0);
  }
  return ShapeHistory::concatenate(cycles);
}

}  // namespace rftswim

#include <algorithm>

#include "rftswim/maneuvers.hpp"

namespace rftswim {

StraighteningPlan plan_straightening(const ArcCurve& curve, double rho) {
  if (!graph_criterion(curve, rho))
    throw Error(ErrorCode::NotStraightenable,
                "angle range must stay below pi/2 with curvature at most 1/rho; general unwinding is not supported");
  const AngleProfile angles = curve_to_angle(curve);
  const auto [lo, hi] = std::minmax_element(angles.theta.begin(), angles.theta.end());

  StraighteningPlan plan;
  plan.length = curve.length();
  plan.frame_angle = 0.5 * (*lo + *hi);
  plan.base_point = curve[0];
  plan.body.length = curve.length();
  plan.body.theta = angles.theta;
  for (double& t : plan.body.theta) t -= plan.frame_angle;
  return plan;
}

ShapeHistory straightening_history(const StraighteningPlan& plan) {
  const std::vector<double> body = plan.body.theta;
  auto fn = [body](double t, Side, std::span<double> theta, std::span<double> theta_dot) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      theta[i] = (1.0 - t) * body[i];
      theta_dot[i] = -body[i];
    }
  };
  return ShapeHistory::from_angles(plan.length, body.size(), 1.0, fn, {});
}

}  // namespace rftswim

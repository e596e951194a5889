#pragma once

#include <span>

#include "rftswim/maneuvers.hpp"

namespace rftswim::detail {

/// Bump centre and amplitude factor at time t of a unit cycle on the arm
/// [arm_start, arm_end], traveling toward arm_start.
struct BumpPhase {
  double factor = 0.0;
  double factor_rate = 0.0;
  double centre = 0.0;
  double centre_rate = 0.0;
};

BumpPhase bump_phase(const BumpSpec& spec, double arm_start, double arm_end, double t, Side side);

/// Adds the bump to theta and theta_dot at nodes with coordinate
/// first + i * h.
void add_bump(const BumpSpec& spec, const BumpPhase& phase, double first, double h, std::span<double> theta,
              std::span<double> theta_dot);

/// Largest bump parameter in (lo, hi] reaching target when f(hi) > target,
/// found by bracketing downward from hi and refining with TOMS 748.
double solve_remainder(const std::function<double(double)>& f, double lo, double hi, double target, double tol);

}  // namespace rftswim::detail

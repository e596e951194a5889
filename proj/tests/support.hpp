#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rftswim/maneuvers.hpp"

namespace rftswim::testing {

/// Exact arc-length samples of a circular arc of radius r starting at the
/// origin along e1, turning left.
inline ArcCurve circular_arc(double length, double radius, std::size_t n) {
  std::vector<Vec2> p(n);
  const double h = grid_spacing(length, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = h * static_cast<double>(i) / radius;
    p[i] = {radius * std::sin(a), radius * (1.0 - std::cos(a))};
  }
  return ArcCurve(length, std::move(p));
}

/// Curve whose node angles are a random sum of sines. Total turning is
/// roughly bounded by `turn`.
inline ArcCurve random_curve(std::mt19937_64& rng, std::size_t n, double turn) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  AngleProfile a;
  a.length = 1.0;
  a.theta.assign(n, 0.0);
  const double base = turn * unif(rng);
  for (int k = 1; k <= 4; ++k) {
    const double amp = turn * unif(rng) / k, phase = pi * unif(rng);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = static_cast<double>(i) / static_cast<double>(n - 1);
      a.theta[i] += amp * std::sin(k * pi * s + phase);
    }
  }
  for (double& t : a.theta) t += base;
  return angle_to_curve(a);
}

/// Reference two disks test: every node against every disk, no grid.
inline bool brute_force_two_disks(const ArcCurve& c, double rho) {
  const std::size_t n = c.size();
  const double tol = 0.5 * c.spacing() / rho;
  const double r = rho * (1.0 - tol), r_cap = 2.0 * rho * (1.0 - tol);
  const AngleProfile a = curve_to_angle(c);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 nrm = rot90(unit(a.theta[i]));
    for (double side : {1.0, -1.0}) {
      const Vec2 centre = c[i] + side * rho * nrm;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && (c[j] - centre).norm() < r) return false;
    }
  }
  const Vec2 out0 = -unit(a.theta.front()), out1 = unit(a.theta.back());
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 d0 = c[j] - c[0], d1 = c[j] - c[n - 1];
    if (j != 0 && d0.dot(out0) > 0.0 && d0.norm() < r_cap) return false;
    if (j != n - 1 && d1.dot(out1) > 0.0 && d1.norm() < r_cap) return false;
  }
  return true;
}

/// Cubic Hermite interpolation of the rigid state between trajectory nodes.
inline RigidState interpolate_state(const Trajectory& traj, double t) {
  const auto& ts = traj.times();
  std::size_t j = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
  j = std::clamp<std::size_t>(j, 1, ts.size() - 1) - 1;
  const double dt = ts[j + 1] - ts[j];
  const double u = (t - ts[j]) / dt;
  const double h00 = 2 * u * u * u - 3 * u * u + 1, h10 = u * u * u - 2 * u * u + u;
  const double h01 = -2 * u * u * u + 3 * u * u, h11 = u * u * u - u * u;
  const RigidState &a = traj.states()[j], &b = traj.states()[j + 1];
  const RigidRate &ra = traj.rates()[j], &rb = traj.rates()[j + 1];
  RigidState s;
  s.x = h00 * a.x + h10 * dt * ra.x_dot + h01 * b.x + h11 * dt * rb.x_dot;
  s.theta = h00 * a.theta + h10 * dt * ra.theta_dot + h01 * b.theta + h11 * dt * rb.theta_dot;
  return s;
}

/// Trapezoid mean of the curve points.
inline Vec2 barycenter(const ArcCurve& c) {
  Vec2 m = Vec2::Zero();
  for (std::size_t i = 0; i < c.size(); ++i) m += (i == 0 || i + 1 == c.size() ? 0.5 : 1.0) * c[i];
  return m / static_cast<double>(c.size() - 1);
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / ("rftswim_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace rftswim::testing

#include "rftswim/dynamics.hpp"

#include <algorithm>

namespace rftswim {

void DragCoefficients::validate() const {
  if (!(c_tau > 0.0) || !(c_nu > 0.0))
    throw Error(ErrorCode::InvalidDrag, "drag coefficients must be positive");
  if (!relaxed && !(c_tau < c_nu))
    throw Error(ErrorCode::InvalidDrag, "strict mode requires c_tau < c_nu (use relaxed mode otherwise)");
}

Mat2 drag_tensor(const Vec2& t, const DragCoefficients& drag) {
  const Vec2 n = rot90(t);
  return drag.c_tau * t * t.transpose() + drag.c_nu * n * n.transpose();
}

namespace {

inline Vec2 apply_drag(const Vec2& t, const Vec2& u, const DragCoefficients& d) {
  const Vec2 n = rot90(t);
  return d.c_tau * t.dot(u) * t + d.c_nu * n.dot(u) * n;
}

inline double weight(std::size_t i, std::size_t n, double h) { return (i == 0 || i + 1 == n) ? 0.5 * h : h; }

GrandResistance assemble_resistance(std::span<const Vec2> pts, std::span<const Vec2> tan, double h,
                                    const DragCoefficients& drag) {
  GrandResistance r;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weight(i, n, h);
    const Mat2 K = drag_tensor(tan[i], drag);
    const Vec2 jx = rot90(pts[i]);
    const Vec2 kjx = K * jx;
    r.A += w * K;
    r.b += w * kjx;
    r.c += w * jx.dot(kjx);
  }
  return r;
}

ShapeForcing assemble_forcing(std::span<const Vec2> pts, std::span<const Vec2> tan, std::span<const Vec2> vel,
                              double h, const DragCoefficients& drag) {
  ShapeForcing f;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weight(i, n, h);
    const Vec2 kv = apply_drag(tan[i], vel[i], drag);
    f.force -= w * kv;
    f.torque -= w * rot90(pts[i]).dot(kv);
  }
  return f;
}

}  // namespace

Eigen::Matrix3d GrandResistance::matrix() const {
  Eigen::Matrix3d m;
  m << A(0, 0), A(0, 1), b.x(), A(1, 0), A(1, 1), b.y(), b.x(), b.y(), c;
  return m;
}

GrandResistance grand_resistance(const ArcCurve& shape, const DragCoefficients& drag) {
  drag.validate();
  const auto tan = tangents_of(shape);
  return assemble_resistance(shape.points(), tan, shape.spacing(), drag);
}

GrandResistance grand_resistance(const ShapeState& shape, double h, const DragCoefficients& drag) {
  return assemble_resistance(shape.points, shape.tangent, h, drag);
}

ShapeForcing shape_forcing(const ArcCurve& shape, std::span<const Vec2> velocity, const DragCoefficients& drag) {
  drag.validate();
  if (velocity.size() != shape.size())
    throw Error(ErrorCode::GridMismatch, "velocity field has " + std::to_string(velocity.size()) +
                                             " entries for " + std::to_string(shape.size()) + " nodes");
  const auto tan = tangents_of(shape);
  return assemble_forcing(shape.points(), tan, velocity, shape.spacing(), drag);
}

ShapeForcing shape_forcing(const ShapeState& shape, double h, const DragCoefficients& drag) {
  return assemble_forcing(shape.points, shape.tangent, shape.velocity, h, drag);
}

BodyVelocity body_velocities(const GrandResistance& r, const ShapeForcing& f) {
  const Eigen::Matrix3d m = r.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig;
  eig.computeDirect(m, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > max_resistance_condition)
    throw Error(ErrorCode::SingularResistance, "resistance matrix condition number exceeds 1e12");
  const Eigen::Vector3d rhs(f.force.x(), f.force.y(), f.torque);
  const Eigen::Vector3d sol = m.llt().solve(rhs);
  return {Vec2(sol(0), sol(1)), sol(2)};
}

BodyVelocity body_velocities(const ShapeState& shape, double h, const DragCoefficients& drag) {
  return body_velocities(grand_resistance(shape, h, drag), shape_forcing(shape, h, drag));
}

Trajectory::Trajectory(ShapeHistory history, DragCoefficients drag, std::vector<double> times,
                       std::vector<RigidState> states, std::vector<RigidRate> rates, std::vector<Side> sides)
    : history_(std::move(history)),
      drag_(drag),
      times_(std::move(times)),
      states_(std::move(states)),
      rates_(std::move(rates)),
      sides_(std::move(sides)) {
  if (times_.empty() || states_.size() != times_.size() || rates_.size() != times_.size() ||
      sides_.size() != times_.size())
    throw Error(ErrorCode::InvalidArgument, "trajectory node arrays must be non-empty and of equal length");
}

ShapeState Trajectory::body_state(std::size_t j) const { return history_.state(times_[j], sides_[j]); }

ArcCurve Trajectory::body_curve(std::size_t j) const { return ArcCurve(history_.length(), body_state(j).points, ArcCurve::Trusted{}); }

ArcCurve Trajectory::lab_curve(std::size_t j) const {
  const ShapeState s = body_state(j);
  const Mat2 R = rotation(states_[j].theta);
  std::vector<Vec2> pts(s.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = states_[j].x + R * s.points[i];
  return ArcCurve(history_.length(), std::move(pts), ArcCurve::Trusted{});
}

std::vector<Vec2> Trajectory::lab_velocity(std::size_t j) const {
  const ShapeState s = body_state(j);
  const Mat2 R = rotation(states_[j].theta);
  std::vector<Vec2> out(s.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec2 rx = R * s.points[i];
    out[i] = rates_[j].x_dot + rates_[j].theta_dot * rot90(rx) + R * s.velocity[i];
  }
  return out;
}

Trajectory Trajectory::with_states(std::vector<RigidState> states) const {
  return Trajectory(history_, drag_, times_, std::move(states), rates_, sides_);
}

Trajectory Trajectory::concatenate(const std::vector<Trajectory>& stages) {
  if (stages.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to concatenate");
  std::vector<ShapeHistory> pieces;
  std::vector<double> times;
  std::vector<RigidState> states;
  std::vector<RigidRate> rates;
  std::vector<Side> sides;
  double offset = 0.0;
  for (const auto& st : stages) {
    if (!times.empty() && st.history().duration() <= 0.0) continue;
    const std::size_t first = times.empty() ? 0 : 1;
    for (std::size_t j = first; j < st.size(); ++j) {
      times.push_back(offset + st.times()[j]);
      states.push_back(st.states()[j]);
      rates.push_back(st.rates()[j]);
      sides.push_back(st.sides()[j]);
    }
    pieces.push_back(st.history());
    offset += st.history().duration();
  }
  return Trajectory(ShapeHistory::concatenate(pieces), stages.front().drag(), std::move(times), std::move(states),
                    std::move(rates), std::move(sides));
}

std::size_t steps_for(double units, std::size_t steps_per_unit) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(units * static_cast<double>(steps_per_unit))));
}

Trajectory integrate_motion(const ShapeHistory& history, const RigidState& initial, const DragCoefficients& drag,
                            std::size_t steps) {
  drag.validate();
  const double T = history.duration();
  const double h = history.spacing();
  ShapeState shape;
  // The body centroid c(t) is carried along: the solver advances the lab
  // centroid y = x + R c, whose rate R (v + omega J c + c') depends on time
  // only through the shape. Isotropic drag then keeps y fixed to roundoff.
  struct Sample {
    BodyVelocity body;
    Vec2 centroid;
    Vec2 centroid_rate;  // body-frame rate of the lab centroid
  };
  const double length = history.length();
  auto solve = [&](double t, Side side) {
    history.evaluate(t, side, shape);
    Sample out{body_velocities(shape, h, drag), Vec2::Zero(), Vec2::Zero()};
    const std::size_t n = shape.size();
    Vec2 c_dot = Vec2::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const double w = weight(i, n, h);
      out.centroid += w * shape.points[i];
      c_dot += w * shape.velocity[i];
    }
    out.centroid /= length;
    c_dot /= length;
    out.centroid_rate = out.body.v + out.body.omega * rot90(out.centroid) + c_dot;
    return out;
  };
  auto lab_rate = [](const RigidState& s, const BodyVelocity& b) {
    return RigidRate{rotation(s.theta) * b.v, b.omega, b};
  };

  std::vector<double> times{0.0};
  std::vector<RigidState> states{initial};
  std::vector<RigidRate> rates;
  std::vector<Side> sides;

  if (!(T > 0.0)) {
    rates.push_back(lab_rate(initial, solve(0.0, Side::After).body));
    sides.push_back(Side::After);
    return Trajectory(history, drag, std::move(times), std::move(states), std::move(rates), std::move(sides));
  }

  std::vector<double> bounds{0.0};
  for (double k : history.kinks()) bounds.push_back(k);
  bounds.push_back(T);

  RigidState s = initial;
  for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
    const double a = bounds[p], b = bounds[p + 1];
    const std::size_t n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(steps) * (b - a) / T)));
    const double dt = (b - a) / static_cast<double>(n);
    Sample v1 = solve(a, Side::After);
    Vec2 y = s.x + rotation(s.theta) * v1.centroid;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = a + dt * static_cast<double>(k);
      const double t_end = k + 1 == n ? b : t + dt;
      const Sample v2 = solve(t + 0.5 * dt, Side::After);
      const Sample v3 = solve(t_end, Side::Before);

      rates.push_back(lab_rate(s, v1.body));
      sides.push_back(Side::After);

      const double w1 = v1.body.omega, w2 = v2.body.omega, w3 = v3.body.omega;
      const Vec2 k1 = rotation(s.theta) * v1.centroid_rate;
      const Vec2 k2 = rotation(s.theta + 0.5 * dt * w1) * v2.centroid_rate;
      const Vec2 k3 = rotation(s.theta + 0.5 * dt * w2) * v2.centroid_rate;
      const Vec2 k4 = rotation(s.theta + dt * w2) * v3.centroid_rate;
      y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      s.theta += dt / 6.0 * (w1 + 4.0 * w2 + w3);
      s.x = y - rotation(s.theta) * v3.centroid;

      times.push_back(t_end);
      states.push_back(s);
      v1 = v3;
    }
  }
  // Final node takes the limit from before the end.
  rates.push_back(lab_rate(s, solve(T, Side::Before).body));
  sides.push_back(Side::Before);
  return Trajectory(history, drag, std::move(times), std::move(states), std::move(rates), std::move(sides));
}

BalanceResidual balance_residual_at(const Trajectory& traj, std::size_t j) {
  const ShapeState s = traj.body_state(j);
  const RigidState& st = traj.states()[j];
  const RigidRate& rt = traj.rates()[j];
  const Mat2 R = rotation(st.theta);
  const double h = traj.history().spacing();
  const std::size_t n = s.size();
  Vec2 force = Vec2::Zero();
  double torque = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weight(i, n, h);
    const Vec2 rx = R * s.points[i];
    const Vec2 chi = st.x + rx;
    const Vec2 chi_dot = rt.x_dot + rt.theta_dot * rot90(rx) + R * s.velocity[i];
    const Vec2 f = -apply_drag(R * s.tangent[i], chi_dot, traj.drag());
    force += w * f;
    torque += w * cross(chi, f);
    scale += w * f.norm();
  }
  if (!(scale > 0.0)) return {};
  return {force.norm() / scale, std::abs(torque) / (traj.history().length() * scale)};
}

BalanceResidual balance_residual(const Trajectory& traj) {
  BalanceResidual worst;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const BalanceResidual r = balance_residual_at(traj, j);
    worst.force = std::max(worst.force, r.force);
    worst.torque = std::max(worst.torque, r.torque);
  }
  return worst;
}

namespace {

template <class F>
std::vector<double> node_integrals(const Trajectory& traj, F&& integrand) {
  const double h = traj.history().spacing();
  std::vector<double> out(traj.size());
  ShapeState s;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    traj.history().evaluate(traj.times()[j], traj.sides()[j], s);
    const RigidRate& rt = traj.rates()[j];
    const Vec2 v = rotation(-traj.states()[j].theta) * rt.x_dot;
    const std::size_t n = s.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 u = v + rt.theta_dot * rot90(s.points[i]) + s.velocity[i];
      acc += weight(i, n, h) * integrand(s.tangent[i], u);
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace

std::vector<double> power_density(const Trajectory& traj) {
  const DragCoefficients d = traj.drag();
  return node_integrals(traj, [&](const Vec2& t, const Vec2& u) { return u.dot(apply_drag(t, u, d)); });
}

std::vector<double> speed_density(const Trajectory& traj) {
  return node_integrals(traj, [](const Vec2&, const Vec2& u) { return u.squaredNorm(); });
}

double time_integral(const std::vector<double>& times, const std::vector<double>& values) {
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < times.size(); ++j) acc += 0.5 * (times[j + 1] - times[j]) * (values[j] + values[j + 1]);
  return acc;
}

double power(const Trajectory& traj) { return time_integral(traj.times(), power_density(traj)); }

}  // namespace rftswim

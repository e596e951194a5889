#include "rftswim/shape_history.hpp"

#include <algorithm>

namespace rftswim {

void ShapeState::resize(std::size_t n) {
  theta.resize(n);
  theta_dot.resize(n);
  points.resize(n);
  velocity.resize(n);
  tangent.resize(n);
}

void integrate_angles(ShapeState& s, double h, std::size_t anchor, const Vec2& anchor_point,
                      const Vec2& anchor_velocity) {
  const std::size_t n = s.theta.size();
  s.points.resize(n);
  s.velocity.resize(n);
  s.tangent.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.tangent[i] = unit(s.theta[i]);

  const double half = 0.5 * h;
  s.points[anchor] = anchor_point;
  s.velocity[anchor] = anchor_velocity;
  for (std::size_t i = anchor + 1; i < n; ++i) {
    s.points[i] = s.points[i - 1] + half * (s.tangent[i - 1] + s.tangent[i]);
    s.velocity[i] = s.velocity[i - 1] +
                    half * (rot90(s.tangent[i - 1]) * s.theta_dot[i - 1] + rot90(s.tangent[i]) * s.theta_dot[i]);
  }
  for (std::size_t i = anchor; i-- > 0;) {
    s.points[i] = s.points[i + 1] - half * (s.tangent[i + 1] + s.tangent[i]);
    s.velocity[i] = s.velocity[i + 1] -
                    half * (rot90(s.tangent[i + 1]) * s.theta_dot[i + 1] + rot90(s.tangent[i]) * s.theta_dot[i]);
  }
}

namespace {

std::vector<double> clean_kinks(std::vector<double> k, double duration) {
  std::erase_if(k, [&](double t) { return !(t > 0.0 && t < duration); });
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

/// Moves a derived time onto a kink or end of the source history when
/// roundoff left it just beside one, so one-sided limits keep their side.
double snap(double t, const std::vector<double>& kinks, double duration) {
  const double eps = 1e-12 * std::max(1.0, duration);
  if (std::abs(t) < eps) return 0.0;
  if (std::abs(t - duration) < eps) return duration;
  const auto it = std::lower_bound(kinks.begin(), kinks.end(), t - eps);
  if (it != kinks.end() && std::abs(*it - t) < eps) return *it;
  return t;
}

}  // namespace

ShapeHistory::ShapeHistory(double length, std::size_t nodes, double duration, StateFn fn, std::vector<double> kinks)
    : length_(length),
      nodes_(nodes),
      duration_(duration),
      fn_(std::make_shared<const StateFn>(std::move(fn))),
      kinks_(clean_kinks(std::move(kinks), duration)) {
  grid_spacing(length, nodes);
  if (!(duration >= 0.0)) throw Error(ErrorCode::InvalidArgument, "history duration must be non-negative");
}

ShapeHistory ShapeHistory::from_angles(double length, std::size_t nodes, double duration, AngleFn fn, Frame frame,
                                       std::vector<double> kinks) {
  if (frame.anchor >= nodes) throw Error(ErrorCode::InvalidArgument, "anchor index outside the grid");
  const double h = grid_spacing(length, nodes);
  auto angles = std::make_shared<const AngleFn>(std::move(fn));
  StateFn state = [angles, nodes, h, frame](double t, Side side, ShapeState& out) {
    out.resize(nodes);
    (*angles)(t, side, out.theta, out.theta_dot);
    if (frame.angle != 0.0)
      for (double& v : out.theta) v += frame.angle;
    integrate_angles(out, h, frame.anchor, frame.anchor_point);
  };
  return ShapeHistory(length, nodes, duration, std::move(state), std::move(kinks));
}

ShapeHistory ShapeHistory::stationary(const AngleProfile& shape, double duration) {
  ShapeState fixed;
  fixed.resize(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    fixed.theta[i] = shape.theta[i] + shape.base_angle_offset;
    fixed.theta_dot[i] = 0.0;
  }
  integrate_angles(fixed, shape.spacing(), 0, shape.base_point);
  StateFn state = [fixed](double, Side, ShapeState& out) { out = fixed; };
  return ShapeHistory(shape.length, shape.size(), duration, std::move(state), {});
}

ShapeHistory ShapeHistory::from_samples(const std::vector<double>& times, const std::vector<AngleProfile>& profiles) {
  if (times.size() != profiles.size() || times.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least two sampled profiles with matching times");
  if (times.front() != 0.0) throw Error(ErrorCode::InvalidArgument, "sample times must start at 0");
  const std::size_t n = profiles.front().size();
  const double length = profiles.front().length;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (profiles[k].size() != n || profiles[k].length != length)
      throw Error(ErrorCode::GridMismatch, "sampled profiles must share one grid");
    if (k > 0 && !(times[k] > times[k - 1])) throw Error(ErrorCode::InvalidArgument, "sample times must increase");
  }
  const double h = grid_spacing(length, n);
  StateFn state = [times, profiles, n, h](double t, Side side, ShapeState& out) {
    out.resize(n);
    // Interval [t_k, t_{k+1}] containing t, honouring the side at sample times.
    std::size_t k;
    if (side == Side::After) {
      k = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
      k = k == 0 ? 0 : k - 1;
    } else {
      k = static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), t) - times.begin());
      k = k == 0 ? 0 : k - 1;
    }
    k = std::min(k, times.size() - 2);
    const AngleProfile& a = profiles[k];
    const AngleProfile& b = profiles[k + 1];
    const double dt = times[k + 1] - times[k];
    const double w = (t - times[k]) / dt;
    for (std::size_t i = 0; i < n; ++i) {
      const double ta = a.theta[i] + a.base_angle_offset;
      const double tb = b.theta[i] + b.base_angle_offset;
      out.theta[i] = ta + w * (tb - ta);
      out.theta_dot[i] = (tb - ta) / dt;
    }
    const Vec2 base = a.base_point + w * (b.base_point - a.base_point);
    const Vec2 base_rate = (b.base_point - a.base_point) / dt;
    integrate_angles(out, h, 0, base, base_rate);
  };
  std::vector<double> kinks(times.begin() + 1, times.end() - 1);
  return ShapeHistory(length, n, times.back(), std::move(state), std::move(kinks));
}

ShapeHistory ShapeHistory::concatenate(const std::vector<ShapeHistory>& pieces) {
  if (pieces.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to concatenate");
  std::vector<ShapeHistory> used;
  for (const auto& p : pieces) {
    if (p.nodes() != pieces.front().nodes() || p.length() != pieces.front().length())
      throw Error(ErrorCode::GridMismatch, "concatenated pieces must share one grid");
    if (p.duration() > 0.0) used.push_back(p);
  }
  if (used.empty()) return pieces.front();
  if (used.size() == 1) return used.front();

  std::vector<double> ends;
  std::vector<double> kinks;
  double t0 = 0.0;
  for (const auto& p : used) {
    for (double k : p.kinks()) kinks.push_back(t0 + k);
    t0 += p.duration();
    ends.push_back(t0);
    kinks.push_back(t0);
  }
  kinks.pop_back();
  const double total = t0;

  StateFn state = [used, ends](double t, Side side, ShapeState& out) {
    std::size_t k;
    if (side == Side::After)
      k = static_cast<std::size_t>(std::upper_bound(ends.begin(), ends.end(), t) - ends.begin());
    else
      k = static_cast<std::size_t>(std::lower_bound(ends.begin(), ends.end(), t) - ends.begin());
    k = std::min(k, used.size() - 1);
    const double start = k == 0 ? 0.0 : ends[k - 1];
    used[k].evaluate(snap(t - start, used[k].kinks(), used[k].duration()), side, out);
  };
  return ShapeHistory(used.front().length(), used.front().nodes(), total, std::move(state), std::move(kinks));
}

void ShapeHistory::evaluate(double t, Side side, ShapeState& out) const { (*fn_)(t, side, out); }

ShapeState ShapeHistory::state(double t, Side side) const {
  ShapeState s;
  evaluate(t, side, s);
  return s;
}

ArcCurve ShapeHistory::curve(double t) const { return ArcCurve(length_, state(t).points, ArcCurve::Trusted{}); }

AngleProfile ShapeHistory::profile(double t) const {
  ShapeState s = state(t);
  AngleProfile a;
  a.length = length_;
  a.base_point = s.points.front();
  a.base_angle_offset = 0.0;
  a.theta = std::move(s.theta);
  return a;
}

ShapeHistory ShapeHistory::rescaled(double duration) const {
  if (!(duration > 0.0) || !(duration_ > 0.0))
    throw Error(ErrorCode::InvalidArgument, "rescaling needs positive durations");
  const double g = duration_ / duration;
  auto fn = fn_;
  StateFn state = [fn, g, kinks = kinks_, T = duration_](double t, Side side, ShapeState& out) {
    (*fn)(snap(t * g, kinks, T), side, out);
    for (double& v : out.theta_dot) v *= g;
    for (Vec2& v : out.velocity) v *= g;
  };
  std::vector<double> kinks;
  for (double k : kinks_) kinks.push_back(k / g);
  return ShapeHistory(length_, nodes_, duration, std::move(state), std::move(kinks));
}

ShapeHistory ShapeHistory::reparametrized(std::function<double(double)> phi, std::function<double(double)> dphi) const {
  auto fn = fn_;
  StateFn state = [fn, phi, dphi, kinks = kinks_, T = duration_](double t, Side side, ShapeState& out) {
    (*fn)(snap(phi(t), kinks, T), side, out);
    const double g = dphi(t);
    for (double& v : out.theta_dot) v *= g;
    for (Vec2& v : out.velocity) v *= g;
  };
  std::vector<double> kinks;
  for (double k : kinks_) {
    double lo = 0.0, hi = duration_;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * duration_; ++it) {
      const double mid = 0.5 * (lo + hi);
      (phi(mid) < k ? lo : hi) = mid;
    }
    kinks.push_back(0.5 * (lo + hi));
  }
  return ShapeHistory(length_, nodes_, duration_, std::move(state), std::move(kinks));
}

ShapeHistory ShapeHistory::reversed() const {
  auto fn = fn_;
  const double T = duration_;
  StateFn state = [fn, T, kinks = kinks_](double t, Side side, ShapeState& out) {
    (*fn)(snap(T - t, kinks, T), side == Side::After ? Side::Before : Side::After, out);
    for (double& v : out.theta_dot) v = -v;
    for (Vec2& v : out.velocity) v = -v;
  };
  std::vector<double> kinks;
  for (double k : kinks_) kinks.push_back(T - k);
  return ShapeHistory(length_, nodes_, duration_, std::move(state), std::move(kinks));
}

}  // namespace rftswim

#include "rftswim/geometry.hpp"

#include <algorithm>

namespace rftswim {

double grid_spacing(double length, std::size_t n) {
  if (n < 3) throw Error(ErrorCode::GridTooCoarse, "need at least 3 nodes, got " + std::to_string(n));
  return length / static_cast<double>(n - 1);
}

double trapezoid(std::span<const double> f, double h) {
  if (f.size() < 2) return 0.0;
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * h;
}

Vec2 trapezoid(std::span<const Vec2> f, double h) {
  if (f.size() < 2) return Vec2::Zero();
  Vec2 sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * h;
}

namespace {

double chord_angle(const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  return std::atan2(d.y(), d.x());
}

}  // namespace

ArcCurve::ArcCurve(double length, std::vector<Vec2> points, Trusted) : length_(length), points_(std::move(points)) {
  grid_spacing(length_, points_.size());
  if (!(length_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "curve length must be positive");
}

ArcCurve::ArcCurve(double length, std::vector<Vec2> points) : length_(length), points_(std::move(points)) {
  const std::size_t n = points_.size();
  const double h = grid_spacing(length_, n);
  if (!(length_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "curve length must be positive");

  const std::size_t m = n - 1;
  std::vector<double> speed(m), turn(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    speed[i] = (points_[i + 1] - points_[i]).norm() / h;
    if (!(speed[i] >= 0.5))
      throw Error(ErrorCode::DegenerateTangent, "chord " + std::to_string(i) + " has relative length " +
                                                    std::to_string(speed[i]));
  }
  for (std::size_t i = 1; i < m; ++i) {
    const double a = chord_angle(points_[i - 1], points_[i]);
    const double b = chord_angle(points_[i], points_[i + 1]);
    turn[i] = std::abs(wrap_angle(b - a));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double t = std::max(turn[i], turn[i + 1]);
    const double lo = std::cos(std::min(t, pi / 2)) - geometry_tolerance;
    if (speed[i] > 1.0 + geometry_tolerance || speed[i] < lo)
      throw Error(ErrorCode::NotUnitSpeed,
                  "chord " + std::to_string(i) + " has relative length " + std::to_string(speed[i]));
  }
}

ArcCurve ArcCurve::transformed(const Mat2& rot, const Vec2& shift) const {
  std::vector<Vec2> out(points_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = rot * points_[i] + shift;
  return ArcCurve(length_, std::move(out), Trusted{});
}

ArcCurve angle_to_curve(const AngleProfile& profile) {
  const std::size_t n = profile.size();
  const double h = profile.spacing();
  std::vector<Vec2> pts(n);
  pts[0] = profile.base_point;
  Vec2 prev = unit(profile.theta[0] + profile.base_angle_offset);
  for (std::size_t i = 1; i < n; ++i) {
    const Vec2 cur = unit(profile.theta[i] + profile.base_angle_offset);
    pts[i] = pts[i - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  return ArcCurve(profile.length, std::move(pts), ArcCurve::Trusted{});
}

AngleProfile curve_to_angle(const ArcCurve& curve) {
  const std::size_t n = curve.size();
  const auto& p = curve.points();

  std::vector<double> phi(n - 1);
  phi[0] = chord_angle(p[0], p[1]);
  for (std::size_t i = 1; i + 1 < n; ++i) phi[i] = phi[i - 1] + wrap_angle(chord_angle(p[i], p[i + 1]) - phi[i - 1]);

  std::vector<double> theta(n);
  theta[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) theta[i + 1] = 2.0 * phi[i] - theta[i];

  // theta_i + (-1)^i c solves the same recursion; pick c with the smoothest result.
  double acc = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = theta[i + 1] - 2.0 * theta[i] + theta[i - 1];
    acc += (i % 2 == 0) ? d : -d;
  }
  const double c = acc / (4.0 * static_cast<double>(n - 2));
  for (std::size_t i = 0; i < n; ++i) theta[i] += (i % 2 == 0) ? c : -c;

  AngleProfile out;
  out.length = curve.length();
  out.base_point = p[0];
  out.base_angle_offset = 0.0;
  out.theta = std::move(theta);
  return out;
}

CurvatureProfile curvature_of(const AngleProfile& profile) {
  const std::size_t n = profile.size();
  const double h = profile.spacing();
  const auto& t = profile.theta;
  CurvatureProfile out{profile.length, std::vector<double>(n)};
  out.kappa[0] = (-3.0 * t[0] + 4.0 * t[1] - t[2]) / (2.0 * h);
  out.kappa[n - 1] = (3.0 * t[n - 1] - 4.0 * t[n - 2] + t[n - 3]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out.kappa[i] = (t[i + 1] - t[i - 1]) / (2.0 * h);
  return out;
}

std::vector<Vec2> tangents_of(const ArcCurve& curve) {
  const AngleProfile a = curve_to_angle(curve);
  std::vector<Vec2> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = unit(a.theta[i]);
  return out;
}

ArcCurve straight_segment(double length, std::size_t n, const Vec2& start, double direction) {
  const double h = grid_spacing(length, n);
  const Vec2 e = unit(direction);
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = start + (h * static_cast<double>(i)) * e;
  return ArcCurve(length, std::move(pts), ArcCurve::Trusted{});
}

}  // namespace rftswim

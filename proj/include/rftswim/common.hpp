#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rftswim {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double pi = std::numbers::pi;

/// Quarter turn counterclockwise (the matrix J).
inline Vec2 rot90(const Vec2& v) { return {-v.y(), v.x()}; }

/// Unit vector at angle a.
inline Vec2 unit(double a) { return {std::cos(a), std::sin(a)}; }

inline Mat2 rotation(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

/// Planar cross product, <Ja, b>.
inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

enum class ErrorCode {
  GridTooCoarse,
  DegenerateTangent,
  NotUnitSpeed,
  GridMismatch,
  InvalidDrag,
  SingularResistance,
  AmplitudeOutOfRange,
  BumpTooLong,
  RampDegenerate,
  NotStraightenable,
  TargetUnreachable,
  InvalidArgument,
  ParseError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Grid resolution shared by simulations: nodes along the body and RK4 steps
/// per unit of maneuver time.
struct Resolution {
  std::size_t nodes = 201;
  std::size_t steps_per_unit = 1000;
};

}  // namespace rftswim

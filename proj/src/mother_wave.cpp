#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>

#include "bump_wave.hpp"

namespace rftswim {

void BumpSpec::validate(double arm_length) const {
  if (profile_id != "sin2") throw Error(ErrorCode::InvalidArgument, "unknown bump profile '" + profile_id + "'");
  if (!(amplitude > 0.0) || !(amplitude < pi / 4))
    throw Error(ErrorCode::AmplitudeOutOfRange, "amplitude must lie in (0, pi/4), got " + std::to_string(amplitude));
  if (!(half_length > 0.0)) throw Error(ErrorCode::InvalidArgument, "bump half length must be positive");
  if (!(half_length < 0.5 * arm_length))
    throw Error(ErrorCode::BumpTooLong, "bump half length " + std::to_string(half_length) +
                                            " needs an arm longer than " + std::to_string(2 * half_length));
  if (!(duty > 0.0) || !(duty < 0.5)) throw Error(ErrorCode::InvalidArgument, "duty must lie in (0, 1/2)");
}

double mother_wave(double u, double amplitude) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  double sign = u < 0.0 ? -1.0 : 1.0;
  double v = std::abs(u);
  if (v > 0.5) v = 1.0 - v;
  if (v > 0.25) {
    v = 0.5 - v;
    sign = -sign;
  }
  const double s = std::sin(4.0 * pi * v);
  return sign * amplitude * s * s;
}

double mother_wave_slope(double u, double amplitude) {
  if (!(std::abs(u) < 1.0)) return 0.0;
  double sign = 1.0;
  double v = std::abs(u);
  if (v > 0.5) {
    v = 1.0 - v;
    sign = -sign;
  }
  if (v > 0.25) v = 0.5 - v;
  return sign * amplitude * 4.0 * pi * std::sin(8.0 * pi * v);
}

double mother_wave_max_slope(double amplitude) { return 4.0 * pi * amplitude; }

namespace {

struct ReferenceGrid {
  std::vector<double> u;
  double h;
  explicit ReferenceGrid(std::size_t n) : u(n + 1), h(2.0 / static_cast<double>(n)) {
    if (n < 8 || n % 8 != 0) throw Error(ErrorCode::InvalidArgument, "reference intervals must be a multiple of 8");
    // Integer numerators keep the grid exactly symmetric.
    const auto nn = static_cast<long long>(n);
    for (long long k = 0; k <= nn; ++k) u[static_cast<std::size_t>(k)] = static_cast<double>(2 * k - nn) / static_cast<double>(nn);
  }
  double integral(const std::vector<double>& f) const { return trapezoid(f, h); }
  std::vector<double> running(const std::vector<double>& f) const {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t k = 1; k < f.size(); ++k) out[k] = out[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
    return out;
  }
};

template <class F>
std::vector<double> tabulate(const ReferenceGrid& g, F&& f) {
  std::vector<double> out(g.u.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(k);
  return out;
}

}  // namespace

BumpConstants bump_constants(double arm_length, const BumpSpec& spec, const DragCoefficients& drag,
                             std::size_t reference_intervals) {
  spec.validate(arm_length);
  const ReferenceGrid g(reference_intervals);
  const double A = spec.amplitude, l = spec.half_length;
  const auto th = tabulate(g, [&](std::size_t k) { return mother_wave(g.u[k], A); });

  BumpConstants c;
  c.sin2 = g.integral(tabulate(g, [&](std::size_t k) { return std::pow(std::sin(th[k]), 2); }));
  c.one_minus_cos = g.integral(tabulate(g, [&](std::size_t k) { return 1.0 - std::cos(th[k]); }));
  c.thrust = drag.c_tau * c.one_minus_cos + (drag.c_nu - drag.c_tau) * c.sin2;
  c.axial_resistance = drag.c_tau * arm_length + l * (drag.c_nu - drag.c_tau) * c.sin2;
  c.alpha = (arm_length - 2.0 * l) * c.thrust / c.axial_resistance;
  c.force_alpha = (arm_length - 2.0 * l) * c.thrust;

  // Transient thrust at relative time tau: G = c_tau F_tau + c_nu F_nu.
  double max_rate = 0.0, max_force = 0.0;
  const std::size_t taus = 200;
  for (std::size_t m = 0; m <= taus; ++m) {
    const double tau = static_cast<double>(m) / static_cast<double>(taus);
    const auto cs = tabulate(g, [&](std::size_t k) { return std::cos(tau * th[k]); });
    const auto sn = tabulate(g, [&](std::size_t k) { return std::sin(tau * th[k]); });
    const auto w1 = g.running(tabulate(g, [&](std::size_t k) { return -sn[k] * th[k]; }));
    const auto w2 = g.running(tabulate(g, [&](std::size_t k) { return cs[k] * th[k]; }));
    const double f_tau = g.integral(tabulate(g, [&](std::size_t k) { return cs[k] * (cs[k] * w1[k] + sn[k] * w2[k]); }));
    const double f_nu = g.integral(tabulate(g, [&](std::size_t k) { return -sn[k] * (-sn[k] * w1[k] + cs[k] * w2[k]); }));
    const double G = std::abs(drag.c_tau * f_tau + drag.c_nu * f_nu);
    const double s2 = g.integral(tabulate(g, [&](std::size_t k) { return sn[k] * sn[k]; }));
    const double a11 = drag.c_tau * arm_length + l * (drag.c_nu - drag.c_tau) * s2;
    max_rate = std::max(max_rate, G / a11);
    max_force = std::max(max_force, G);
  }
  c.beta = max_rate;
  c.force_beta = 2.0 * max_force;
  c.low = l * c.alpha - 2.0 * l * l * c.beta;
  c.high = l * c.alpha + 2.0 * l * l * c.beta;
  return c;
}

std::vector<double> vanishing_integrals(double amplitude, double tau, std::size_t reference_intervals) {
  const ReferenceGrid g(reference_intervals);
  const auto th = tabulate(g, [&](std::size_t k) { return mother_wave(g.u[k], amplitude); });
  auto integral = [&](auto&& f) { return g.integral(tabulate(g, f)); };

  std::vector<double> out;
  {
    const auto c = tabulate(g, [&](std::size_t k) { return std::cos(th[k]); });
    const auto s = tabulate(g, [&](std::size_t k) { return std::sin(th[k]); });
    const auto C = g.running(c), S = g.running(s);
    out.push_back(integral([&](std::size_t k) { return c[k] * s[k]; }));
    out.push_back(integral([&](std::size_t k) { return s[k]; }));
    out.push_back(integral([&](std::size_t k) { return c[k] * s[k] * C[k]; }));
    out.push_back(integral([&](std::size_t k) { return s[k] * s[k] * S[k]; }));
    out.push_back(integral([&](std::size_t k) { return c[k] * c[k] * S[k]; }));
  }
  {
    const auto c = tabulate(g, [&](std::size_t k) { return std::cos(tau * th[k]); });
    const auto s = tabulate(g, [&](std::size_t k) { return std::sin(tau * th[k]); });
    const auto P = g.running(tabulate(g, [&](std::size_t k) { return s[k] * th[k]; }));
    const auto Q = g.running(tabulate(g, [&](std::size_t k) { return c[k] * th[k]; }));
    const auto C = g.running(c), S = g.running(s);
    out.push_back(integral([&](std::size_t k) { return c[k] * s[k] * P[k]; }));
    out.push_back(integral([&](std::size_t k) { return s[k] * s[k] * Q[k]; }));
    out.push_back(integral([&](std::size_t k) { return c[k] * c[k] * Q[k]; }));
    out.push_back(integral([&](std::size_t k) { return c[k] * c[k] * P[k] * S[k]; }));
    out.push_back(integral([&](std::size_t k) { return s[k] * s[k] * P[k] * S[k]; }));
    out.push_back(integral([&](std::size_t k) { return c[k] * s[k] * P[k] * C[k]; }));
    out.push_back(integral([&](std::size_t k) { return c[k] * s[k] * Q[k] * S[k]; }));
    out.push_back(integral([&](std::size_t k) { return s[k] * s[k] * Q[k] * C[k]; }));
    out.push_back(integral([&](std::size_t k) { return c[k] * c[k] * Q[k] * C[k]; }));
  }
  return out;
}

namespace detail {

BumpPhase bump_phase(const BumpSpec& spec, double a, double b, double t, Side side) {
  const double t0 = spec.duty, l = spec.half_length;
  const double speed = (b - a - 2.0 * l) / (1.0 - 2.0 * t0);
  const bool creating = t < t0 || (t == t0 && side == Side::Before);
  const bool destroying = t > 1.0 - t0 || (t == 1.0 - t0 && side == Side::After);
  if (creating) return {t / t0, 1.0 / t0, b - l, 0.0};
  if (destroying) return {(1.0 - t) / t0, -1.0 / t0, a + l, 0.0};
  return {1.0, 0.0, b - l - speed * (t - t0), -speed};
}

void add_bump(const BumpSpec& spec, const BumpPhase& ph, double first, double h, std::span<double> theta,
              std::span<double> theta_dot) {
  const double l = spec.half_length, A = spec.amplitude;
  const auto n = static_cast<long long>(theta.size());
  const long long lo = std::max(0LL, static_cast<long long>(std::floor((ph.centre - l - first) / h)));
  const long long hi = std::min(n - 1, static_cast<long long>(std::ceil((ph.centre + l - first) / h)));
  for (long long i = lo; i <= hi; ++i) {
    const double u = (first + h * static_cast<double>(i) - ph.centre) / l;
    if (!(std::abs(u) < 1.0)) continue;
    const double w = mother_wave(u, A);
    const auto k = static_cast<std::size_t>(i);
    theta[k] += ph.factor * w;
    theta_dot[k] += ph.factor_rate * w - ph.factor * mother_wave_slope(u, A) * ph.centre_rate / l;
  }
}

double solve_remainder(const std::function<double(double)>& f, double lo, double hi, double target, double tol) {
  auto g = [&](double p) {
    const double v = f(p) - target;
    return std::abs(v) < tol ? 0.0 : v;
  };
  double upper = hi, g_upper = g(hi);
  if (g_upper == 0.0) return hi;
  if (g_upper < 0.0) throw Error(ErrorCode::TargetUnreachable, "remainder exceeds one full cycle");
  double lower = upper, g_lower = g_upper;
  for (int j = 0; j < 60 && g_lower > 0.0; ++j) {
    upper = lower;
    g_upper = g_lower;
    lower = std::max(lo, 0.5 * lower);
    g_lower = g(lower);
    if (lower == lo) break;
  }
  if (g_lower == 0.0) return lower;
  if (g_lower > 0.0) throw Error(ErrorCode::TargetUnreachable, "no bump parameter brackets the remainder");
  std::uintmax_t iters = 100;
  auto tol_x = [&](double x, double y) { return std::abs(x - y) <= 1e-14 * std::max(std::abs(x), std::abs(y)); };
  const auto r = boost::math::tools::toms748_solve(g, lower, upper, g_lower, g_upper, tol_x, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace detail
}  // namespace rftswim

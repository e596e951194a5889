#include <doctest.h>

#include "support.hpp"

using namespace rftswim;
using doctest::Approx;

namespace {

Trajectory rigid_motion(double length, const Vec2& u, double duration, const DragCoefficients& drag) {
  const ShapeHistory still = ShapeHistory::stationary(curve_to_angle(straight_segment(length, 201)), duration);
  std::vector<double> t;
  std::vector<RigidState> s;
  std::vector<RigidRate> r;
  std::vector<Side> sides;
  for (int k = 0; k <= 10; ++k) {
    t.push_back(duration * k / 10.0);
    s.push_back({u * t.back(), 0.0});
    r.push_back({u, 0.0, {}});
    sides.push_back(Side::After);
  }
  return Trajectory(still, drag, t, s, r, sides);
}

// Slow deformation between two random shapes.
ShapeHistory random_morph(std::mt19937_64& rng) {
  const ArcCurve a = testing::random_curve(rng, 101, 0.8), b = testing::random_curve(rng, 101, 0.8);
  AngleProfile pa = curve_to_angle(a), pb = curve_to_angle(b);
  pa.base_point = pb.base_point = Vec2::Zero();
  return ShapeHistory::from_samples({0.0, 0.4, 1.0}, {pa, pb, pa});
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("drag validation") {
  CHECK_NOTHROW(DragCoefficients{1.0, 2.0, false}.validate());
  CHECK_THROWS_AS(DragCoefficients({2.0, 2.0, false}).validate(), Error);
  CHECK_NOTHROW(DragCoefficients{2.0, 2.0, true}.validate());
  CHECK_NOTHROW(DragCoefficients{3.0, 2.0, true}.validate());
  try {
    DragCoefficients{0.0, 1.0, true}.validate();
    FAIL("zero drag accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDrag);
  }
}

TEST_CASE("drag tensor acts by c_tau along and c_nu across") {
  const DragCoefficients d{1.5, 4.0};
  const Vec2 t = unit(0.3);
  CHECK((drag_tensor(t, d) * t - 1.5 * t).norm() < 1e-15);
  CHECK((drag_tensor(t, d) * rot90(t) - 4.0 * rot90(t)).norm() < 1e-15);
}

TEST_CASE("grand resistance of a straight rod") {
  const DragCoefficients d{1.0, 2.0};
  const ArcCurve rod = straight_segment(1.0, 201);
  const GrandResistance r = grand_resistance(rod, d);
  const double h = 0.005;
  CHECK(r.A(0, 0) == Approx(1.0).epsilon(1e-14));
  CHECK(r.A(1, 1) == Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(r.A(0, 1)) < 1e-15);
  CHECK(std::abs(r.b.x()) < 1e-15);
  CHECK(r.b.y() == Approx(1.0).epsilon(1e-14));                    // c_nu L^2 / 2
  CHECK(r.c == Approx(2.0 * (1.0 / 3.0 + h * h / 6.0)).epsilon(1e-13));  // trapezoid of c_nu s^2
  const Eigen::Matrix3d m = r.matrix();
  CHECK((m - m.transpose()).norm() == 0.0);
}

TEST_CASE("ill conditioned resistance is refused") {
  const DragCoefficients d{1e-13, 1.0, true};
  const ArcCurve rod = straight_segment(1.0, 51);
  const std::vector<Vec2> v(51, Vec2::Zero());
  try {
    body_velocities(grand_resistance(rod, d), shape_forcing(rod, v, d));
    FAIL("solve accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularResistance);
  }
  const std::vector<Vec2> short_v(50, Vec2::Zero());
  CHECK_THROWS_AS(shape_forcing(rod, short_v, DragCoefficients{}), Error);
}

TEST_CASE("rigid shapes stay put") {
  const ShapeHistory still = ShapeHistory::stationary(curve_to_angle(testing::circular_arc(1.0, 0.8, 101)), 1.0);
  const Trajectory tr = integrate_motion(still, {{0.2, -0.1}, 0.4}, DragCoefficients{}, 100);
  for (const RigidState& s : tr.states()) {
    CHECK((s.x - Vec2(0.2, -0.1)).norm() < 1e-15);
    CHECK(s.theta == 0.4);
  }
  CHECK(steps_for(2.5, 1000) == 2500);
}

TEST_CASE("translation cycle balances force and torque at every node") {
  const Trajectory tr = integrate_motion(translation_cycle(1.0, BumpSpec{}, 201), {}, DragCoefficients{}, 1000);
  const BalanceResidual r = balance_residual(tr);
  CHECK(r.force < 1e-10);
  CHECK(r.torque < 1e-10);
  CHECK(tr.final_state().x.x() > 0.0);
  CHECK(std::abs(tr.final_state().x.y()) < 1e-12);
  // a perturbed state leaves an unbalanced force
  std::vector<RigidState> s = tr.states();
  s[400].theta += 0.1;
  CHECK(balance_residual_at(tr.with_states(s), 400).force > 1e-3);
}

TEST_CASE("steps never straddle a kink") {
  const ShapeHistory h = translation_cycle(1.0, BumpSpec{}, 101);
  const Trajectory tr = integrate_motion(h, {}, DragCoefficients{}, 95);
  for (double k : h.kinks()) {
    const auto& ts = tr.times();
    CHECK(std::find(ts.begin(), ts.end(), k) != ts.end());
  }
}

TEST_CASE("motion is covariant under rigid placement") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 5; ++k) {
    const ShapeHistory h = random_morph(rng);
    const RigidState start{{u(rng), u(rng)}, pi * u(rng)};
    const Trajectory a = integrate_motion(h, {}, DragCoefficients{}, 200);
    const Trajectory b = integrate_motion(h, start, DragCoefficients{}, 200);
    const Mat2 R = rotation(start.theta);
    for (std::size_t j = 0; j < a.size(); j += 40) {
      CHECK((b.states()[j].x - (start.x + R * a.states()[j].x)).norm() < 1e-12);
      CHECK(b.states()[j].theta - a.states()[j].theta == Approx(start.theta).epsilon(1e-12));
    }
  }
}

TEST_CASE("a stroke played backwards undoes itself") {
  const ShapeHistory h = translation_cycle(1.0, BumpSpec{}, 201);
  const Trajectory fwd = integrate_motion(h, {}, DragCoefficients{}, 1000);
  const Trajectory bwd = integrate_motion(h.reversed(), fwd.final_state(), DragCoefficients{}, 1000);
  CHECK(bwd.final_state().x.norm() < 1e-9);
  CHECK(std::abs(bwd.final_state().theta) < 1e-9);
}

TEST_CASE("isotropic drag pins the centroid") {
  std::mt19937_64 rng(5);
  const DragCoefficients iso{1.3, 1.3, true};
  for (int k = 0; k < 4; ++k) {
    const Trajectory tr = integrate_motion(random_morph(rng), {}, iso, 150);
    const Vec2 c0 = testing::barycenter(tr.lab_curve(0));
    for (std::size_t j = 0; j < tr.size(); j += 25) CHECK((testing::barycenter(tr.lab_curve(j)) - c0).norm() < 1e-13);
  }
}

TEST_CASE("power lies between the drag bounds") {
  std::mt19937_64 rng(3);
  const DragCoefficients d{0.7, 1.9};
  for (int k = 0; k < 5; ++k) {
    const Trajectory tr = integrate_motion(random_morph(rng), {}, d, 120);
    const double p = power(tr);
    const double q = time_integral(tr.times(), speed_density(tr));
    CHECK(p >= d.c_tau * q * (1.0 - 1e-12));
    CHECK(p <= d.c_nu * q * (1.0 + 1e-12));
  }
}

TEST_CASE("rigid rod power closed forms") {
  const DragCoefficients d{1.0, 2.5};
  CHECK(power(rigid_motion(2.0, {0.3, 0.0}, 1.5, d)) == Approx(1.0 * 2.0 * 0.09 * 1.5).epsilon(1e-12));
  CHECK(power(rigid_motion(2.0, {0.0, 0.3}, 1.5, d)) == Approx(2.5 * 2.0 * 0.09 * 1.5).epsilon(1e-12));
}

TEST_CASE("concatenated trajectories drop the shared node") {
  const ShapeHistory h = translation_cycle(1.0, BumpSpec{}, 101);
  const Trajectory a = integrate_motion(h, {}, DragCoefficients{}, 100);
  const Trajectory b = integrate_motion(h, a.final_state(), DragCoefficients{}, 100);
  const Trajectory ab = Trajectory::concatenate({a, b});
  CHECK(ab.size() == a.size() + b.size() - 1);
  CHECK(ab.times().back() == Approx(2.0));
  CHECK((ab.final_state().x - b.final_state().x).norm() == 0.0);
}

}  // TEST_SUITE

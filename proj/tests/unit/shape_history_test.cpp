#include <doctest.h>

#include "support.hpp"

using namespace rftswim;
using doctest::Approx;

namespace {

double max_point_gap(const ShapeState& a, const ShapeState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a.points[i] - b.points[i]).norm());
  return m;
}

double max_rate_gap(const ShapeState& a, const ShapeState& b, double scale) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.theta_dot[i] - scale * b.theta_dot[i]));
  return m;
}

}  // namespace

TEST_SUITE("shape_history") {

TEST_CASE("stationary history has no rate") {
  const ShapeHistory h = ShapeHistory::stationary(curve_to_angle(testing::circular_arc(1.0, 1.0, 51)), 2.0);
  const ShapeState s = h.state(1.3);
  for (double v : s.theta_dot) CHECK(v == 0.0);
  for (const Vec2& v : s.velocity) CHECK(v.norm() == 0.0);
  CHECK(h.duration() == 2.0);
}

TEST_CASE("sampled profiles interpolate linearly") {
  AngleProfile a, b;
  a.theta.assign(11, 0.0);
  b.theta.assign(11, 0.4);
  const ShapeHistory h = ShapeHistory::from_samples({0.0, 2.0}, {a, b});
  const ShapeState s = h.state(0.5);
  CHECK(s.theta[3] == Approx(0.1));
  CHECK(s.theta_dot[3] == Approx(0.2));
  AngleProfile c;
  c.theta.assign(12, 0.0);
  CHECK_THROWS_AS(ShapeHistory::from_samples({0.0, 1.0}, {a, c}), Error);
}

TEST_CASE("concatenation evaluates each piece on its own clock") {
  const BumpSpec spec;
  const ShapeHistory one = translation_cycle(1.0, spec, 101);
  const ShapeHistory slow = one.rescaled(1.1);
  const ShapeHistory joined = ShapeHistory::concatenate({slow, one});
  CHECK(joined.duration() == Approx(2.1));
  // kinks of both pieces, junction included
  CHECK(joined.kinks().size() == 5);
  for (double t : {0.0, 0.37, 1.05, 1.1, 1.45, 2.1}) {
    const bool second = t > 1.1;
    const ShapeState ref = second ? one.state(t - 1.1) : slow.state(t);
    CHECK(max_point_gap(joined.state(t, second ? Side::After : Side::Before), ref) < 1e-15);
  }
  // junction: Before ends the slow piece, After starts the fast one
  CHECK(max_point_gap(joined.state(1.1, Side::Before), slow.state(1.1, Side::Before)) == 0.0);
  CHECK(max_point_gap(joined.state(1.1, Side::After), one.state(0.0, Side::After)) == 0.0);
}

TEST_CASE("derived times snap onto the source kinks") {
  const BumpSpec spec;
  const ShapeHistory one = translation_cycle(1.0, spec, 101);
  const ShapeHistory two = ShapeHistory::concatenate({one.rescaled(1.0 + 0.1), one});
  // (1.1 + 0.1) - 1.1 rounds above 0.1; Before must still see creation
  const double t = 1.1 + spec.duty;
  REQUIRE(t - 1.1 != spec.duty);
  const ShapeState a = two.state(t, Side::Before);
  const ShapeState b = one.state(spec.duty, Side::Before);
  CHECK(max_rate_gap(a, b, 1.0) < 1e-9);
}

TEST_CASE("rescaling scales rates inversely") {
  const ShapeHistory one = translation_cycle(1.0, BumpSpec{}, 101);
  const ShapeHistory long3 = one.rescaled(3.0);
  for (double u : {0.05, 0.3, 0.61, 0.95}) {
    const ShapeState a = long3.state(3.0 * u), b = one.state(u);
    CHECK(max_point_gap(a, b) < 1e-14);
    CHECK(max_rate_gap(a, b, 1.0 / 3.0) < 1e-12);
  }
  CHECK(long3.kinks().front() == Approx(3.0 * one.kinks().front()));
}

TEST_CASE("reversal mirrors time and flips rates") {
  const ShapeHistory one = translation_cycle(1.0, BumpSpec{}, 101);
  const ShapeHistory back = one.reversed();
  for (double t : {0.0, 0.2, 0.5, 0.97}) {
    const ShapeState a = back.state(t, Side::After), b = one.state(1.0 - t, Side::Before);
    CHECK(max_point_gap(a, b) < 1e-14);
    CHECK(max_rate_gap(a, b, -1.0) < 1e-12);
  }
}

TEST_CASE("reparametrization moves kinks to the preimage") {
  const ShapeHistory one = translation_cycle(1.0, BumpSpec{}, 101);
  auto phi = [](double t) { return t * t; };
  auto dphi = [](double t) { return 2.0 * t; };
  const ShapeHistory r = one.reparametrized(phi, dphi);
  REQUIRE(r.kinks().size() == one.kinks().size());
  for (std::size_t k = 0; k < r.kinks().size(); ++k) CHECK(r.kinks()[k] == Approx(std::sqrt(one.kinks()[k])));
  const ShapeState a = r.state(0.6), b = one.state(0.36);
  CHECK(max_point_gap(a, b) < 1e-14);
  CHECK(max_rate_gap(a, b, 1.2) < 1e-12);
}

TEST_CASE("integrate_angles anchors the chosen node") {
  ShapeState s;
  s.resize(5);
  for (std::size_t i = 0; i < 5; ++i) {
    s.theta[i] = 0.1 * static_cast<double>(i);
    s.theta_dot[i] = 1.0;
  }
  integrate_angles(s, 0.25, 2, {1.0, 2.0}, {0.5, 0.0});
  CHECK((s.points[2] - Vec2(1.0, 2.0)).norm() == 0.0);
  CHECK((s.velocity[2] - Vec2(0.5, 0.0)).norm() == 0.0);
  // uniform spin: velocity relative to the anchor is J (p - p_anchor)
  const Vec2 rel = s.velocity[4] - s.velocity[2];
  CHECK((rel - rot90(s.points[4] - s.points[2])).norm() < 1e-15);
}

}  // TEST_SUITE

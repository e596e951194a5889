#include <doctest.h>

#include "support.hpp"

using namespace rftswim;
using doctest::Approx;

TEST_SUITE("geometry") {

TEST_CASE("grid spacing and coarse grids") {
  CHECK(grid_spacing(1.0, 201) == Approx(0.005));
  CHECK_THROWS_AS(grid_spacing(1.0, 2), Error);
  try {
    grid_spacing(1.0, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridTooCoarse);
  }
}

TEST_CASE("trapezoid is exact on linear data") {
  std::vector<double> f(11);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 3.0 + 2.0 * static_cast<double>(i) * 0.1;
  // int_0^1 (3 + 2 s) ds = 4
  CHECK(trapezoid(f, 0.1) == Approx(4.0).epsilon(1e-14));
}

TEST_CASE("angle round trip on an arc") {
  const ArcCurve arc = testing::circular_arc(1.0, 0.7, 201);
  const AngleProfile a = curve_to_angle(arc);
  const ArcCurve back = angle_to_curve(a);
  // trapezoid chords are h cos(d/2), exact ones 2 r sin(d/2) with d = h/r:
  // each is short by h d^2/12, so the gap at s is about s h^2 / (12 r^2)
  const double h = arc.spacing(), r = 0.7;
  for (std::size_t i = 0; i < arc.size(); ++i)
    CHECK((back[i] - arc[i]).norm() <= 1.05 * arc.s(i) * h * h / (12 * r * r) + 1e-15);
  // tangent angle at s is s / r
  for (std::size_t i = 0; i < a.size(); i += 20) CHECK(a.theta[i] == Approx(arc.s(i) / 0.7).epsilon(1e-5));
}

TEST_CASE("curvature of a circle is 1/r") {
  const ArcCurve arc = testing::circular_arc(1.0, 0.5, 401);
  const CurvatureProfile k = curvature_of(curve_to_angle(arc));
  for (double v : k.kappa) CHECK(v == Approx(2.0).epsilon(1e-5));
}

TEST_CASE("straight segment and rigid transforms") {
  const ArcCurve seg = straight_segment(2.0, 5, {1.0, 1.0}, pi / 2);
  CHECK((seg[4] - Vec2(1.0, 3.0)).norm() < 1e-15);
  const ArcCurve moved = seg.transformed(rotation(pi / 2), {0.5, 0.0});
  CHECK((moved[0] - Vec2(-0.5, 1.0)).norm() < 1e-15);
  CHECK(curve_to_angle(moved).theta[2] == Approx(pi).epsilon(1e-14));
}

TEST_CASE("unit speed is enforced on raw input") {
  std::vector<Vec2> p{{0, 0}, {0.5, 0}, {1.2, 0}};
  CHECK_THROWS_AS(ArcCurve(1.0, p), Error);
  std::vector<Vec2> q{{0, 0}, {0.5, 0}, {0.5, 0}};
  try {
    ArcCurve(1.0, q);
    FAIL("accepted a zero chord");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateTangent);
  }
  CHECK_NOTHROW(ArcCurve(1.0, p, ArcCurve::Trusted{}));
}

TEST_CASE("random angle profiles rebuild to unit-speed curves") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 25; ++k) {
    const ArcCurve c = testing::random_curve(rng, 101, 2.0);
    CHECK_NOTHROW(ArcCurve(c.length(), c.points()));
    const ArcCurve again = angle_to_curve(curve_to_angle(c));
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, (again[i] - c[i]).norm());
    CHECK(worst < 1e-6);
  }
}

}  // TEST_SUITE

#include <doctest.h>

#include "rftswim/energetics.hpp"
#include "support.hpp"

using namespace rftswim;
using doctest::Approx;

namespace {

StrokeObjective small_objective() {
  StrokeObjective obj;
  obj.target = 0.03;
  obj.max_evaluations = 12;
  return obj;
}

}  // namespace

TEST_SUITE("energetics") {

TEST_CASE("power of a stroke scales inversely with its duration") {
  const DragCoefficients d;
  const TranslationPlan p = plan_translation(1.0, 0.03, BumpSpec{}, d);
  const double unit_time = stroke_power(p, d);
  CHECK(unit_time > 0.0);
  CHECK(stroke_power(p, d, {}, 4.0) == Approx(unit_time * p.cycles() / 4.0).epsilon(1e-12));
  CHECK(stroke_power(plan_translation(1.0, 0.0, BumpSpec{}, d), d) == 0.0);
}

TEST_CASE("default box") {
  const StrokeBounds b = default_stroke_bounds(2.0);
  CHECK(b.lower.half_length == Approx(0.1));
  CHECK(b.upper.half_length == Approx(0.4));
  CHECK(b.lower.amplitude < b.upper.amplitude);
  CHECK(b.lower.duty < b.upper.duty);
}

TEST_CASE("objective validation") {
  StrokeObjective obj = small_objective();
  CHECK_NOTHROW(obj.validate());
  obj.bounds.lower.amplitude = 0.7;
  obj.bounds.upper.amplitude = 0.6;
  CHECK_THROWS_AS(obj.validate(), Error);
  obj = small_objective();
  obj.rho = 0.0;
  CHECK_THROWS_AS(obj.validate(), Error);
}

TEST_CASE("zero target costs nothing") {
  StrokeObjective obj = small_objective();
  obj.target = 0.0;
  const OptimizationResult r = optimize_stroke(obj, DragCoefficients{});
  CHECK(r.feasible);
  CHECK(r.best_power == 0.0);
  CHECK(r.achieved_a == 0.0);
}

TEST_CASE("a point box echoes its spec") {
  StrokeObjective obj = small_objective();
  BumpSpec s;
  s.amplitude = 0.5;
  s.half_length = 0.12;
  s.duty = 0.15;
  obj.bounds = {s, s};
  const OptimizationResult r = optimize_stroke(obj, DragCoefficients{});
  CHECK(r.best_spec.amplitude == s.amplitude);
  CHECK(r.best_spec.half_length == s.half_length);
  CHECK(r.best_spec.duty == s.duty);
  CHECK(r.evaluations == 1);
  const StrokeEvaluation e = evaluate_stroke(obj, s, DragCoefficients{});
  CHECK(r.best_power == e.power);
}

TEST_CASE("search never ends worse than its start") {
  const StrokeObjective obj = small_objective();
  const DragCoefficients d;
  BumpSpec centre;
  centre.amplitude = 0.5 * (obj.bounds.lower.amplitude + obj.bounds.upper.amplitude);
  centre.half_length = 0.5 * (obj.bounds.lower.half_length + obj.bounds.upper.half_length);
  centre.duty = 0.5 * (obj.bounds.lower.duty + obj.bounds.upper.duty);
  const StrokeEvaluation start = evaluate_stroke(obj, centre, d);
  const OptimizationResult r = optimize_stroke(obj, d);
  CHECK(r.evaluations <= obj.max_evaluations);
  CHECK(r.feasible);
  CHECK(r.best_power <= start.power);
  CHECK(std::abs(r.achieved_a - obj.target) < 1e-7);
}

TEST_CASE("an impossible curvature budget is unreachable") {
  StrokeObjective obj = small_objective();
  obj.rho = 0.5;  // 1/rho below every bump curvature in the box
  obj.max_evaluations = 6;
  try {
    optimize_stroke(obj, DragCoefficients{});
    FAIL("optimizer reported a feasible stroke");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TargetUnreachable);
  }
}

}  // TEST_SUITE

#pragma once

#include <vector>

#include "rftswim/maneuvers.hpp"

namespace rftswim {

/// Power of a translation plan executed over [0, duration]. A non-positive
/// duration plays one unit of time per cycle. Empty plans cost nothing.
double stroke_power(const TranslationPlan& plan, const DragCoefficients& drag, const Resolution& res = {},
                    double duration = 0.0);
/// Power of an executed pipeline.
double stroke_power(const PipelineResult& result);

/// Box for the bump parameters searched by the optimizer. Half lengths are
/// absolute, in units of length.
struct StrokeBounds {
  BumpSpec lower;
  BumpSpec upper;
};

/// Default box for a body of length L.
StrokeBounds default_stroke_bounds(double length);

/// Minimum-power translation by a fixed distance over a fixed time within
/// the bump family.
struct StrokeObjective {
  double target = 0.05;
  double rho = 0.01;
  double length = 1.0;
  double duration = 1.0;
  StrokeBounds bounds = default_stroke_bounds(1.0);
  /// Non-positive means 1e3 c_nu L.
  double penalty_weight = 0.0;
  std::size_t max_evaluations = 200;
  double min_diameter = 1e-4;  // simplex size in box-normalized coordinates

  void validate() const;
};

struct StrokeEvaluation {
  BumpSpec spec;
  double objective = 0.0;
  double power = 0.0;
  double achieved = 0.0;
  bool feasible = false;
};

struct OptimizationResult {
  BumpSpec best_spec;
  double best_power = 0.0;
  double achieved_a = 0.0;
  std::size_t evaluations = 0;
  bool feasible = false;
  TranslationPlan plan;
  std::vector<StrokeEvaluation> history;
};

/// Evaluates one spec: plan, execute, check curvature against rho.
StrokeEvaluation evaluate_stroke(const StrokeObjective& obj, const BumpSpec& spec, const DragCoefficients& drag,
                                 const Resolution& res = {});

/// Nelder-Mead over (amplitude, half length, duty) in the bounds box, from a
/// fixed simplex at the box centre. The best point is re-executed and
/// checked with the two disks test. Throws TargetUnreachable when no
/// feasible point was found.
OptimizationResult optimize_stroke(const StrokeObjective& obj, const DragCoefficients& drag,
                                   const Resolution& res = {});

}  // namespace rftswim

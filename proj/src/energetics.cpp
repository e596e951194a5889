#include "rftswim/energetics.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "rftswim/parallel.hpp"

namespace rftswim {

namespace {

/// Executes a translation plan from rest over the given duration.
std::optional<Trajectory> execute(const TranslationPlan& plan, const DragCoefficients& drag, const Resolution& res,
                                  double duration) {
  if (plan.cycles() == 0) return std::nullopt;
  const double units = static_cast<double>(plan.cycles());
  ShapeHistory h = translation_history(plan, res.nodes);
  if (duration > 0.0) h = h.rescaled(duration);
  return integrate_motion(h, {}, drag, steps_for(units, res.steps_per_unit));
}

double penalty_weight(const StrokeObjective& obj, const DragCoefficients& drag) {
  return obj.penalty_weight > 0.0 ? obj.penalty_weight : 1e3 * drag.c_nu * obj.length;
}

// Amount by which the bump curvature 4 pi A / l exceeds 1 / rho, relative.
double curvature_excess(const BumpSpec& s, double rho) {
  return std::max(0.0, mother_wave_max_slope(s.amplitude) * rho / s.half_length - 1.0);
}

constexpr std::size_t dims = 3;
using Point = std::array<double, dims>;

std::array<double, dims> as_array(const BumpSpec& s) { return {s.amplitude, s.half_length, s.duty}; }

}  // namespace

double stroke_power(const TranslationPlan& plan, const DragCoefficients& drag, const Resolution& res,
                    double duration) {
  const auto traj = execute(plan, drag, res, duration);
  return traj ? power(*traj) : 0.0;
}

double stroke_power(const PipelineResult& result) { return power(result.trajectory); }

StrokeBounds default_stroke_bounds(double length) {
  StrokeBounds b;
  b.lower.amplitude = 0.3;
  b.upper.amplitude = 0.75;
  b.lower.half_length = 0.05 * length;
  b.upper.half_length = 0.2 * length;
  b.lower.duty = 0.05;
  b.upper.duty = 0.25;
  return b;
}

void StrokeObjective::validate() const {
  if (!(length > 0.0) || !(rho > 0.0) || !(duration > 0.0))
    throw Error(ErrorCode::InvalidArgument, "length, rho and duration must be positive");
  if (!std::isfinite(target)) throw Error(ErrorCode::InvalidArgument, "target must be finite");
  bounds.lower.validate(length);
  bounds.upper.validate(length);
  const auto lo = as_array(bounds.lower), hi = as_array(bounds.upper);
  for (std::size_t d = 0; d < dims; ++d)
    if (!(lo[d] <= hi[d])) throw Error(ErrorCode::InvalidArgument, "empty optimizer bounds");
  if (max_evaluations == 0) throw Error(ErrorCode::InvalidArgument, "need at least one evaluation");
}

StrokeEvaluation evaluate_stroke(const StrokeObjective& obj, const BumpSpec& spec, const DragCoefficients& drag,
                                 const Resolution& res) {
  StrokeEvaluation ev;
  ev.spec = spec;
  const double weight = penalty_weight(obj, drag);
  double excess = curvature_excess(spec, obj.rho);
  try {
    const TranslationPlan plan =
        plan_translation(obj.length, obj.target, spec, drag, res, RemainderTuning::Amplitude);
    const auto traj = execute(plan, drag, res, obj.duration);
    if (!traj) excess = 0.0;  // nothing bends
    ev.power = traj ? power(*traj) : 0.0;
    ev.achieved = traj ? traj->final_state().x.x() : 0.0;
    const double tol = plan_tolerance * obj.length * static_cast<double>(plan.cycles() + 1);
    const bool reached = std::abs(ev.achieved - obj.target) < tol;
    ev.feasible = excess == 0.0 && reached;
    ev.objective = ev.power + weight * excess + (reached ? 0.0 : weight);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TargetUnreachable) throw;
    ev.power = std::numeric_limits<double>::infinity();
    ev.objective = weight * (1.0 + excess) + 1.0;
  }
  return ev;
}

OptimizationResult optimize_stroke(const StrokeObjective& obj, const DragCoefficients& drag, const Resolution& res) {
  obj.validate();
  drag.validate();
  const Point lo = as_array(obj.bounds.lower), hi = as_array(obj.bounds.upper);
  std::vector<std::size_t> free;
  for (std::size_t d = 0; d < dims; ++d)
    if (hi[d] > lo[d]) free.push_back(d);
  const std::size_t n = free.size();

  OptimizationResult out;
  auto spec_at = [&](const std::vector<double>& z) {
    Point p;
    for (std::size_t d = 0; d < dims; ++d) p[d] = lo[d];
    for (std::size_t k = 0; k < n; ++k) p[free[k]] = lo[free[k]] + std::clamp(z[k], 0.0, 1.0) * (hi[free[k]] - lo[free[k]]);
    BumpSpec s = obj.bounds.lower;
    s.amplitude = p[0];
    s.half_length = p[1];
    s.duty = p[2];
    return s;
  };
  // Batches run in parallel; results are recorded in submission order.
  auto evaluate = [&](const std::vector<std::vector<double>>& zs) {
    std::vector<StrokeEvaluation> evs(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) { evs[i] = evaluate_stroke(obj, spec_at(zs[i]), drag, res); });
    std::vector<double> f;
    for (auto& e : evs) {
      f.push_back(e.objective);
      out.history.push_back(std::move(e));
    }
    return f;
  };
  auto budget = [&] { return out.history.size() < obj.max_evaluations; };

  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(n, 0.5));
  for (std::size_t k = 0; k < n; ++k) simplex[k + 1][k] += 0.05;
  if (n + 1 > obj.max_evaluations) simplex.resize(obj.max_evaluations);
  std::vector<double> f = evaluate(simplex);

  auto clamp01 = [](std::vector<double> z) {
    for (double& v : z) v = std::clamp(v, 0.0, 1.0);
    return z;
  };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i)
      for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(simplex[i][k] - simplex[0][k]));
    return d;
  };

  while (n > 0 && simplex.size() == n + 1 && budget()) {
    std::vector<std::size_t> order(n + 1);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> f2;
    for (std::size_t i : order) {
      s2.push_back(simplex[i]);
      f2.push_back(f[i]);
    }
    simplex = std::move(s2);
    f = std::move(f2);
    if (diameter() < obj.min_diameter) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> z(n);
      for (std::size_t k = 0; k < n; ++k) z[k] = centroid[k] + t * (simplex[n][k] - centroid[k]);
      return clamp01(z);
    };

    const auto xr = along(-1.0);
    const double fr = evaluate({xr})[0];
    if (fr < f[0]) {
      if (!budget()) {
        simplex[n] = xr;
        f[n] = fr;
        break;
      }
      const auto xe = along(-2.0);
      const double fe = evaluate({xe})[0];
      simplex[n] = fe < fr ? xe : xr;
      f[n] = std::min(fe, fr);
    } else if (fr < f[n - 1]) {
      simplex[n] = xr;
      f[n] = fr;
    } else {
      if (!budget()) break;
      const bool outside = fr < f[n];
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = evaluate({xc})[0];
      if (fc < (outside ? fr : f[n])) {
        simplex[n] = xc;
        f[n] = fc;
      } else {
        std::vector<std::vector<double>> shrunk;
        for (std::size_t i = 1; i <= n && out.history.size() + shrunk.size() < obj.max_evaluations; ++i) {
          std::vector<double> z(n);
          for (std::size_t k = 0; k < n; ++k) z[k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
          shrunk.push_back(z);
        }
        const auto fs = evaluate(shrunk);
        for (std::size_t i = 0; i < fs.size(); ++i) {
          simplex[i + 1] = shrunk[i];
          f[i + 1] = fs[i];
        }
      }
    }
  }
  out.evaluations = out.history.size();

  // Cheapest feasible evaluations first; the winner must survive re-execution
  // and the two disks test on every time node.
  std::vector<std::size_t> ranked;
  for (std::size_t i = 0; i < out.history.size(); ++i)
    if (out.history[i].feasible) ranked.push_back(i);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t a, std::size_t b) { return out.history[a].power < out.history[b].power; });
  for (std::size_t i : ranked) {
    const StrokeEvaluation& e = out.history[i];
    const TranslationPlan plan =
        plan_translation(obj.length, obj.target, e.spec, drag, res, RemainderTuning::Amplitude);
    const auto traj = execute(plan, drag, res, obj.duration);
    if (traj && !check_trajectory(*traj, obj.rho).ok) {
      out.history[i].feasible = false;
      continue;
    }
    out.best_spec = e.spec;
    out.best_power = traj ? power(*traj) : 0.0;
    out.achieved_a = traj ? traj->final_state().x.x() : 0.0;
    out.feasible = true;
    out.plan = plan;
    return out;
  }
  throw Error(ErrorCode::TargetUnreachable, "no feasible stroke in the search box");
}

}  // namespace rftswim

#include <algorithm>

#include "rftswim/maneuvers.hpp"

namespace rftswim {

const char* segment_name(SegmentKind k) {
  switch (k) {
    case SegmentKind::Straighten: return "straighten";
    case SegmentKind::Rotate: return "rotate";
    case SegmentKind::Translate: return "translate";
    case SegmentKind::Unstraighten: return "unstraighten";
  }
  return "unknown";
}

namespace {

Vec2 mean_point(const std::vector<Vec2>& p) {
  Vec2 m = Vec2::Zero();
  for (const Vec2& q : p) m += q;
  return m / static_cast<double>(p.size());
}

/// Rigid state placing the body points onto the lab points in the least
/// squares sense.
RigidState fit_pose(const std::vector<Vec2>& lab, const std::vector<Vec2>& body) {
  const Vec2 cl = mean_point(lab), cb = mean_point(body);
  double dot = 0.0, crs = 0.0;
  for (std::size_t i = 0; i < lab.size(); ++i) {
    const Vec2 p = body[i] - cb, q = lab[i] - cl;
    dot += p.dot(q);
    crs += cross(p, q);
  }
  const double theta = std::atan2(crs, dot);
  return {cl - rotation(theta) * cb, theta};
}

double max_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, (a[i] - b[i]).norm());
  return d;
}

/// Curve barycentre with trapezoid weights.
Vec2 barycenter(const ArcCurve& c) {
  std::vector<double> w(c.size(), 1.0);
  w.front() = w.back() = 0.5;
  Vec2 m = Vec2::Zero();
  for (std::size_t i = 0; i < c.size(); ++i) m += w[i] * c[i];
  return m / static_cast<double>(c.size() - 1);
}

Trajectory rescale(const Trajectory& traj, double duration) {
  const double g = duration / traj.history().duration();
  std::vector<double> times = traj.times();
  for (double& t : times) t *= g;
  std::vector<RigidRate> rates = traj.rates();
  for (auto& r : rates) {
    r.x_dot /= g;
    r.theta_dot /= g;
    r.body.v /= g;
    r.body.omega /= g;
  }
  return Trajectory(traj.history().rescaled(duration), traj.drag(), std::move(times), traj.states(),
                    std::move(rates), traj.sides());
}

bool is_straight(const StraighteningPlan& p) {
  return std::all_of(p.body.theta.begin(), p.body.theta.end(), [](double t) { return std::abs(t) < 1e-12; });
}

struct Runner {
  const DragCoefficients& drag;
  const PipelineOptions& opt;
  double length;
  std::size_t nodes;
  ArcCurve current;
  std::vector<PlanSegment> segments;
  std::vector<Trajectory> stages;

  Pose pose() const {
    const RigidState s = fit_pose(current.points(), straight_segment(length, nodes).points());
    return {s.x, s.theta};
  }

  void run(SegmentKind kind, const ShapeHistory& history, PlanSegment seg) {
    const std::vector<Vec2> body = history.state(0.0, Side::After).points;
    const RigidState start = fit_pose(current.points(), body);
    std::vector<Vec2> placed(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) placed[i] = start.x + rotation(start.theta) * body[i];
    if (max_distance(placed, current.points()) > geometry_tolerance * length)
      throw Error(ErrorCode::InvalidArgument, std::string("stage '") + segment_name(kind) +
                                                  "' does not start from the current shape");

    Trajectory traj = integrate_motion(history, start, drag, steps_for(history.duration(), opt.res.steps_per_unit));
    const ArcCurve before = current;
    current = traj.lab_curve(traj.size() - 1);

    seg.kind = kind;
    seg.units = history.duration();
    seg.start = start;
    seg.end = traj.final_state();
    seg.measured_dx1 = (barycenter(current) - barycenter(before)).dot(unit(start.theta));
    seg.measured_dtheta = seg.end.theta - seg.start.theta;
    segments.push_back(std::move(seg));
    stages.push_back(std::move(traj));
  }
};

}  // namespace

PipelineResult plan_full(const ArcCurve& chi_in, const ArcCurve& chi_fin, double rho, const DragCoefficients& drag,
                         double duration, const PipelineOptions& options) {
  drag.validate();
  if (!(duration > 0.0)) throw Error(ErrorCode::InvalidArgument, "duration must be positive");
  if (chi_in.size() != chi_fin.size() || std::abs(chi_in.length() - chi_fin.length()) > 1e-12 * chi_in.length())
    throw Error(ErrorCode::GridMismatch, "start and target curves must share length and node count");
  if (chi_in.size() != options.res.nodes)
    throw Error(ErrorCode::GridMismatch, "curves must have the configured node count");
  for (const ArcCurve* c : {&chi_in, &chi_fin})
    if (!check_two_disks(*c, rho).ok) throw Error(ErrorCode::InvalidArgument, "endpoint curve violates two disks");

  const double L = chi_in.length();
  const std::size_t N = chi_in.size();
  const StraighteningPlan in_plan = plan_straightening(chi_in, rho);
  const StraighteningPlan fin_plan = plan_straightening(chi_fin, rho);

  Runner run{drag, options, L, N, chi_in, {}, {}};
  ManeuverPlan plan;
  plan.duration = duration;

  if (!is_straight(in_plan)) run.run(SegmentKind::Straighten, straightening_history(in_plan), {});
  plan.straight_in = run.pose();

  if (is_straight(fin_plan)) {
    plan.straight_fin = {fin_plan.base_point, fin_plan.frame_angle};
  } else {
    // Placed the way Runner::run places its stages, so equal endpoints give
    // equal straight poses.
    const ShapeHistory h = straightening_history(fin_plan);
    const RigidState start = fit_pose(chi_fin.points(), h.state(0.0, Side::After).points);
    const Trajectory probe = integrate_motion(h, start, drag, steps_for(h.duration(), options.res.steps_per_unit));
    plan.straight_fin = {probe.final_state().x, probe.final_state().theta};
  }
  const Vec2 target_centre = plan.straight_fin.barycenter(L);

  RotationSetup setup;
  setup.half_length = 0.5 * L;
  setup.ramp_angle = options.ramp_angle;
  setup.margin = options.margin;
  const BumpSpec rot_bump = options.rotation_bump.value_or(default_rotation_bump(setup));
  bool ramp_measured = false;

  auto rotate = [&](double phi) {
    if (std::abs(phi) < options.min_rotation) return;
    const RotationPlan rp =
        plan_rotation(setup, phi, rot_bump, drag, options.res, RemainderTuning::Amplitude);
    if (!ramp_measured) {
      plan.ramp_rotation = rp.ramp_rotation;
      ramp_measured = true;
    }
    PlanSegment seg;
    seg.target = phi;
    seg.cycles = rp.cycles();
    seg.bump = rp.base;
    seg.remainder = rp.remainder;
    run.run(SegmentKind::Rotate, rotation_history(rp, N), seg);
  };

  // Point the axis at the target barycentre, whichever way round is closer.
  {
    const Pose p = run.pose();
    const Vec2 d = target_centre - p.barycenter(L);
    if (d.norm() >= options.min_translation) {
      const double ahead = wrap_angle(std::atan2(d.y(), d.x()) - p.direction);
      const double behind = wrap_angle(ahead + pi);
      rotate(std::abs(ahead) <= std::abs(behind) ? ahead : behind);
    }
  }
  {
    const Pose p = run.pose();
    const double a = (target_centre - p.barycenter(L)).dot(unit(p.direction));
    if (std::abs(a) >= options.min_translation) {
      const TranslationPlan tp =
          plan_translation(L, a, options.translation_bump, drag, options.res, RemainderTuning::Amplitude);
      PlanSegment seg;
      seg.target = a;
      seg.cycles = tp.cycles();
      seg.bump = tp.base;
      seg.remainder = tp.remainder;
      if (seg.cycles > 0) run.run(SegmentKind::Translate, translation_history(tp, N), seg);
    }
  }
  rotate(wrap_angle(plan.straight_fin.direction - run.pose().direction));
  if (!is_straight(fin_plan)) run.run(SegmentKind::Unstraighten, straightening_history(fin_plan).reversed(), {});

  std::vector<Trajectory> scaled;
  if (run.stages.empty()) {
    AngleProfile still = curve_to_angle(chi_in);
    still.base_point = Vec2::Zero();
    const ShapeHistory h = ShapeHistory::stationary(still, duration);
    scaled.push_back(integrate_motion(h, {chi_in[0], 0.0}, drag, options.res.steps_per_unit));
  } else {
    const double share = duration / static_cast<double>(run.stages.size());
    for (std::size_t k = 0; k < run.stages.size(); ++k) {
      scaled.push_back(rescale(run.stages[k], share));
      run.segments[k].t_begin = share * static_cast<double>(k);
      run.segments[k].t_end = k + 1 == run.stages.size() ? duration : share * static_cast<double>(k + 1);
    }
  }
  Trajectory traj = Trajectory::concatenate(scaled);
  plan.segments = std::move(run.segments);
  plan.final_error = max_distance(traj.lab_curve(traj.size() - 1).points(), chi_fin.points()) / L;
  return {std::move(plan), std::move(traj)};
}

}  // namespace rftswim

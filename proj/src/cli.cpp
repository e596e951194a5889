#include "rftswim/cli.hpp"

#include <CLI11.hpp>

#include "rftswim/parallel.hpp"

namespace rftswim {

namespace fs = std::filesystem;

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

const Json& section(const RunConfig& cfg, const char* name) {
  static const Json empty = Json::object();
  return cfg.body.contains(name) ? cfg.body.at(name) : empty;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw Error(ErrorCode::ParseError, std::string(what) + " must be positive");
}

Vec2 barycenter_of(const ArcCurve& c) {
  Vec2 m = Vec2::Zero();
  for (std::size_t i = 0; i < c.size(); ++i) m += (i == 0 || i + 1 == c.size() ? 0.5 : 1.0) * c[i];
  return m / static_cast<double>(c.size() - 1);
}

struct Simulation {
  std::string maneuver;
  ShapeHistory history;
  RigidState initial;
};

// Builds the shape history named by the simulate block, in conventional time.
Simulation build_simulation(const RunConfig& cfg) {
  const Json& s = section(cfg, "simulate");
  const std::string kind = get_or<std::string>(s, "maneuver", "translation");
  const std::size_t N = cfg.res.nodes;

  if (kind == "translation") {
    const double L = get_or(s, "length", 1.0);
    const BumpSpec bump = bump_from_json(get_or(s, "bump", Json::object()));
    const auto cycles = get_or<std::size_t>(s, "cycles", 1);
    if (cycles == 0) throw Error(ErrorCode::ParseError, "cycles must be positive");
    ShapeHistory one = translation_cycle(L, bump, N);
    if (get_or(s, "reverse", false)) one = one.reversed();
    return {kind, ShapeHistory::concatenate(std::vector<ShapeHistory>(cycles, one)), {}};
  }
  if (kind == "rotation") {
    RotationSetup setup;
    setup.half_length = get_or(s, "half_length", 0.5);
    setup.ramp_angle = get_or(s, "ramp_angle", setup.ramp_angle);
    setup.margin = get_or(s, "margin", 0.0);
    const BumpSpec bump = bump_from_json(get_or(s, "bump", Json::object()), default_rotation_bump(setup));
    RotationPlan plan;
    if (s.contains("target")) {
      plan = plan_rotation(setup, s.at("target").get<double>(), bump, cfg.drag, cfg.res);
    } else {
      plan.setup = setup;
      plan.base = bump;
      plan.full_cycles = get_or<std::size_t>(s, "cycles", 1);
    }
    return {kind, rotation_history(plan, N), {}};
  }
  if (kind == "straighten") {
    const ArcCurve c = read_curve_csv(cfg.resolve(s.at("curve").get<std::string>()));
    const StraighteningPlan plan = plan_straightening(c, cfg.rho);
    return {kind, straightening_history(plan), plan.initial_state()};
  }
  if (kind == "rigid") {
    const ArcCurve c = read_curve_csv(cfg.resolve(s.at("curve").get<std::string>()));
    AngleProfile a = curve_to_angle(c);
    const Vec2 base = a.base_point;
    a.base_point = Vec2::Zero();
    return {kind, ShapeHistory::stationary(a, get_or(s, "units", 1.0)), {base, 0.0}};
  }
  if (kind == "profiles") {
    const auto times = s.at("times").get<std::vector<double>>();
    const auto files = s.at("files").get<std::vector<std::string>>();
    std::vector<AngleProfile> profiles;
    for (const auto& f : files) profiles.push_back(read_angle_csv(cfg.resolve(f)));
    return {kind, ShapeHistory::from_samples(times, profiles), {}};
  }
  throw Error(ErrorCode::ParseError, "unknown maneuver '" + kind + "'");
}

int cmd_simulate(const RunConfig& cfg, const fs::path& out_dir, bool frames, std::ostream& out) {
  Simulation sim = build_simulation(cfg);
  const double units = sim.history.duration();
  ShapeHistory h = sim.history;
  if (cfg.duration && units > 0.0) h = h.rescaled(*cfg.duration);
  const Trajectory traj = integrate_motion(h, sim.initial, cfg.drag, steps_for(units, cfg.res.steps_per_unit));

  const TrajectoryTable table = trajectory_table(traj);
  const BalanceResidual res = balance_residual(traj);
  const double L = h.length();
  const ArcCurve first = traj.lab_curve(0), last = traj.lab_curve(traj.size() - 1);
  const RigidState& a = traj.states().front();
  const RigidState& b = traj.final_state();

  Json summary = {{"maneuver", sim.maneuver},
                  {"duration", h.duration()},
                  {"nodes", traj.size()},
                  {"dx1", b.x.x() - a.x.x()},
                  {"dx2", b.x.y() - a.x.y()},
                  {"dtheta", b.theta - a.theta},
                  {"barycenter_drift", (barycenter_of(last) - barycenter_of(first)).norm() / L},
                  {"residual", {{"force", res.force}, {"torque", res.torque}}},
                  {"power", time_integral(table.t, table.power_density)}};
  if (get_or(section(cfg, "simulate"), "check", false)) summary["two_disks"] = to_json(check_trajectory(traj, cfg.rho));

  fs::create_directories(out_dir);
  write_trajectory_csv(out_dir / "trajectory.csv", table);
  write_json(out_dir / "summary.json", summary);
  if (frames) write_svg_frames(out_dir / "frames", traj, cfg.frames);
  out << "simulate: " << traj.size() << " nodes, dx1 " << summary["dx1"].get<double>() << ", residual "
      << std::max(res.force, res.torque) << '\n';
  return exit_ok;
}

int cmd_plan(const RunConfig& cfg, const fs::path& out_dir, bool frames, std::ostream& out) {
  const Json& p = section(cfg, "plan");
  const ArcCurve in = read_curve_csv(cfg.resolve(p.at("chi_in").get<std::string>()));
  const ArcCurve fin = read_curve_csv(cfg.resolve(p.at("chi_fin").get<std::string>()));
  PipelineOptions opt;
  opt.res = cfg.res;
  opt.translation_bump = bump_from_json(get_or(p, "translation_bump", Json::object()));
  if (p.contains("rotation_bump")) opt.rotation_bump = bump_from_json(p.at("rotation_bump"));
  opt.ramp_angle = get_or(p, "ramp_angle", opt.ramp_angle);
  opt.margin = get_or(p, "margin", opt.margin);

  const PipelineResult r = plan_full(in, fin, cfg.rho, cfg.drag, cfg.duration.value_or(1.0), opt);
  const TrajectoryTable table = trajectory_table(r.trajectory);
  const BalanceResidual res = balance_residual(r.trajectory);
  const TwoDisksReport disks = check_trajectory(r.trajectory, cfg.rho);
  const Json summary = {{"final_error", r.plan.final_error},
                        {"nodes", r.trajectory.size()},
                        {"residual", {{"force", res.force}, {"torque", res.torque}}},
                        {"power", time_integral(table.t, table.power_density)},
                        {"two_disks", to_json(disks)}};

  fs::create_directories(out_dir);
  write_json(out_dir / "plan.json", to_json(r.plan));
  write_trajectory_csv(out_dir / "trajectory.csv", table);
  write_curve_csv(out_dir / "final_curve.csv", r.trajectory.lab_curve(r.trajectory.size() - 1));
  write_json(out_dir / "summary.json", summary);
  if (frames) write_svg_frames(out_dir / "frames", r.trajectory, cfg.frames);
  out << "plan: " << r.plan.segments.size() << " segments, final error " << r.plan.final_error << ", two disks "
      << (disks.ok ? "ok" : "violated") << '\n';
  return exit_ok;
}

int cmd_validate(const RunConfig& cfg, const fs::path& out_dir, std::ostream& out) {
  const Json& v = section(cfg, "validate");
  const ArcCurve c = read_curve_csv(cfg.resolve(v.at("curve").get<std::string>()));
  const TwoDisksReport rep = check_two_disks(c, get_or(v, "rho", cfg.rho));
  fs::create_directories(out_dir);
  write_json(out_dir / "report.json", to_json(rep));
  out << "validate: " << (rep.ok ? "ok" : "violated") << ", " << rep.violations.size() << " violations\n";
  return rep.ok ? exit_ok : exit_invalid;
}

int cmd_optimize(const RunConfig& cfg, const fs::path& out_dir, std::ostream& out) {
  const Json& o = section(cfg, "optimize");
  StrokeObjective obj;
  obj.length = get_or(o, "length", 1.0);
  obj.target = get_or(o, "target", obj.target);
  obj.rho = cfg.rho;
  obj.duration = cfg.duration.value_or(1.0);
  obj.bounds = default_stroke_bounds(obj.length);
  if (o.contains("bounds")) {
    const Json& b = o.at("bounds");
    if (b.contains("lower")) obj.bounds.lower = bump_from_json(b.at("lower"), obj.bounds.lower);
    if (b.contains("upper")) obj.bounds.upper = bump_from_json(b.at("upper"), obj.bounds.upper);
  }
  obj.penalty_weight = get_or(o, "penalty_weight", 0.0);
  obj.max_evaluations = get_or<std::size_t>(o, "max_evaluations", obj.max_evaluations);
  obj.min_diameter = get_or(o, "min_diameter", obj.min_diameter);
  try {
    obj.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }

  fs::create_directories(out_dir);
  const OptimizationResult r = optimize_stroke(obj, cfg.drag, cfg.res);
  write_json(out_dir / "result.json", to_json(r));
  out << "optimize: best power " << r.best_power << " after " << r.evaluations << " evaluations\n";
  return exit_ok;
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return exit_parse;
    case ErrorCode::NotStraightenable: return exit_straighten;
    case ErrorCode::TargetUnreachable: return exit_unreachable;
    default: return exit_simulate;
  }
}

}  // namespace

RunConfig RunConfig::load(const fs::path& path, bool relaxed) {
  RunConfig cfg;
  cfg.body = read_json(path);
  cfg.base_dir = path.parent_path();
  try {
    const Json& j = cfg.body;
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
    if (j.contains("drag")) {
      cfg.drag.c_tau = get_or(j.at("drag"), "c_tau", cfg.drag.c_tau);
      cfg.drag.c_nu = get_or(j.at("drag"), "c_nu", cfg.drag.c_nu);
    }
    cfg.drag.relaxed = relaxed || get_or(j, "relaxed_mode", false);
    if (j.contains("grid")) {
      cfg.res.nodes = get_or<std::size_t>(j.at("grid"), "N", cfg.res.nodes);
      cfg.res.steps_per_unit = get_or<std::size_t>(j.at("grid"), "M", cfg.res.steps_per_unit);
    }
    cfg.rho = get_or(j, "rho", cfg.rho);
    if (j.contains("T")) cfg.duration = j.at("T").get<double>();
    cfg.frames = get_or<std::size_t>(j, "frames", cfg.frames);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  if (cfg.res.nodes < 3 || cfg.res.steps_per_unit == 0)
    throw Error(ErrorCode::ParseError, "grid needs N >= 3 and M >= 1");
  require_positive(cfg.rho, "rho");
  if (cfg.duration) require_positive(*cfg.duration, "T");
  try {
    cfg.drag.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return cfg;
}

fs::path RunConfig::resolve(const std::string& p) const {
  const fs::path q(p);
  return q.is_absolute() ? q : base_dir / q;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar filament swimmers under resistive force theory"};
  app.require_subcommand(1);
  std::string config, out_dir = ".";
  bool frames = false, relaxed = false;
  auto common = [&](CLI::App* sub, bool with_frames) {
    sub->add_option("--config", config, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--relaxed-mode", relaxed, "accept any positive drag pair");
    if (with_frames) sub->add_flag("--frames", frames, "write SVG frames");
  };
  CLI::App* sim = app.add_subcommand("simulate", "integrate a maneuver and write its trajectory");
  CLI::App* plan = app.add_subcommand("plan", "plan and run a maneuver between two curves");
  CLI::App* val = app.add_subcommand("validate", "two disks check of a curve");
  CLI::App* opt = app.add_subcommand("optimize", "minimum-power translation stroke");
  common(sim, true);
  common(plan, true);
  common(val, false);
  common(opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return exit_parse;
  }

  RunConfig cfg;
  try {
    cfg = RunConfig::load(config, relaxed);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_parse;
  }

  try {
    if (sim->parsed()) return cmd_simulate(cfg, out_dir, frames, out);
    if (plan->parsed()) return cmd_plan(cfg, out_dir, frames, out);
    if (val->parsed()) return cmd_validate(cfg, out_dir, out);
    return cmd_optimize(cfg, out_dir, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_for(e.code());
  } catch (const Json::exception& e) {
    err << "ParseError: " << e.what() << '\n';
    return exit_parse;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return exit_simulate;
  }
}

}  // namespace rftswim

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rftswim/cli.hpp"
#include "rftswim/energetics.hpp"

namespace py = pybind11;
using namespace rftswim;

namespace {

using Points = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;

ArcCurve to_curve(const Points& p, double length) {
  std::vector<Vec2> pts(static_cast<std::size_t>(p.rows()));
  for (Eigen::Index i = 0; i < p.rows(); ++i) pts[static_cast<std::size_t>(i)] = p.row(i).transpose();
  return ArcCurve(length, std::move(pts));
}

Points to_points(const ArcCurve& c) {
  Points p(static_cast<Eigen::Index>(c.size()), 2);
  for (std::size_t i = 0; i < c.size(); ++i) p.row(static_cast<Eigen::Index>(i)) = c[i].transpose();
  return p;
}

DragCoefficients make_drag(double c_tau, double c_nu, bool relaxed) {
  DragCoefficients d{c_tau, c_nu, relaxed};
  d.validate();
  return d;
}

BumpSpec make_bump(double amplitude, double half_length, double duty) {
  BumpSpec b;
  b.amplitude = amplitude;
  b.half_length = half_length;
  b.duty = duty;
  return b;
}

py::dict bump_dict(const BumpSpec& b) {
  py::dict d;
  d["amplitude"] = b.amplitude;
  d["half_length"] = b.half_length;
  d["duty"] = b.duty;
  return d;
}

py::dict trajectory_dict(const Trajectory& traj) {
  const std::size_t n = traj.size();
  py::array_t<double> x({n, std::size_t{2}}), theta(n), t(n);
  auto xs = x.mutable_unchecked<2>();
  auto th = theta.mutable_unchecked<1>();
  auto ts = t.mutable_unchecked<1>();
  for (std::size_t j = 0; j < n; ++j) {
    const RigidState& s = traj.states()[j];
    xs(j, 0) = s.x.x();
    xs(j, 1) = s.x.y();
    th(j) = s.theta;
    ts(j) = traj.times()[j];
  }
  const BalanceResidual r = balance_residual(traj);
  py::dict d;
  d["t"] = t;
  d["x"] = x;
  d["theta"] = theta;
  d["power"] = power(traj);
  d["residual_force"] = r.force;
  d["residual_torque"] = r.torque;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Planar filament swimmer in resistive force theory";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def(
      "curve_from_angles",
      [](const std::vector<double>& theta, double length) {
        AngleProfile a;
        a.length = length;
        a.theta = theta;
        return to_points(angle_to_curve(a));
      },
      py::arg("theta"), py::arg("length") = 1.0, "Node positions of the curve with the given tangent angles.");

  m.def(
      "check_two_disks",
      [](const Points& points, double rho, double length) {
        const TwoDisksReport r = check_two_disks(to_curve(points, length), rho);
        py::dict d;
        d["ok"] = r.ok;
        d["max_curvature"] = r.max_curvature;
        d["worst_clearance"] = r.worst_clearance;
        d["violations"] = r.violations.size();
        return d;
      },
      py::arg("points"), py::arg("rho"), py::arg("length") = 1.0);

  m.def(
      "graph_criterion",
      [](const Points& points, double rho, double length) { return graph_criterion(to_curve(points, length), rho); },
      py::arg("points"), py::arg("rho"), py::arg("length") = 1.0);

  m.def(
      "simulate_translation_cycle",
      [](double amplitude, double half_length, double duty, std::size_t nodes, std::size_t steps, double c_tau,
         double c_nu, bool relaxed) {
        const BumpSpec b = make_bump(amplitude, half_length, duty);
        return trajectory_dict(
            integrate_motion(translation_cycle(1.0, b, nodes), {}, make_drag(c_tau, c_nu, relaxed), steps));
      },
      py::arg("amplitude") = 0.6, py::arg("half_length") = 0.1, py::arg("duty") = 0.1, py::arg("nodes") = 201,
      py::arg("steps") = 1000, py::arg("c_tau") = 1.0, py::arg("c_nu") = 2.0, py::arg("relaxed") = false);

  m.def(
      "simulate_rotation_cycle",
      [](std::size_t nodes, std::size_t steps, double c_tau, double c_nu, bool relaxed) {
        const RotationSetup setup;
        return trajectory_dict(integrate_motion(rotation_cycle(setup, default_rotation_bump(setup), nodes), {},
                                                make_drag(c_tau, c_nu, relaxed), steps));
      },
      py::arg("nodes") = 201, py::arg("steps") = 1000, py::arg("c_tau") = 1.0, py::arg("c_nu") = 2.0, py::arg("relaxed") = false);

  m.def(
      "cycle_displacement",
      [](double amplitude, double half_length, double duty, double c_tau, double c_nu, bool relaxed) {
        return cycle_displacement(1.0, make_bump(amplitude, half_length, duty), make_drag(c_tau, c_nu, relaxed));
      },
      py::arg("amplitude") = 0.6, py::arg("half_length") = 0.1, py::arg("duty") = 0.1, py::arg("c_tau") = 1.0,
      py::arg("c_nu") = 2.0, py::arg("relaxed") = false);

  m.def(
      "plan_full",
      [](const Points& chi_in, const Points& chi_fin, double rho, double duration, double c_tau, double c_nu,
         bool relaxed) {
        const PipelineResult r = plan_full(to_curve(chi_in, 1.0), to_curve(chi_fin, 1.0), rho,
                                           make_drag(c_tau, c_nu, relaxed), duration);
        py::list segments;
        for (const PlanSegment& s : r.plan.segments) {
          py::dict d;
          d["kind"] = segment_name(s.kind);
          d["target"] = s.target;
          d["cycles"] = s.cycles;
          d["t_begin"] = s.t_begin;
          d["t_end"] = s.t_end;
          segments.append(d);
        }
        py::dict d = trajectory_dict(r.trajectory);
        d["segments"] = segments;
        d["final_error"] = r.plan.final_error;
        d["final_curve"] = to_points(r.trajectory.lab_curve(r.trajectory.size() - 1));
        return d;
      },
      py::arg("chi_in"), py::arg("chi_fin"), py::arg("rho"), py::arg("duration") = 1.0, py::arg("c_tau") = 1.0,
      py::arg("c_nu") = 2.0, py::arg("relaxed") = false);

  m.def(
      "optimize_stroke",
      [](double target, double rho, std::size_t max_evaluations, double c_tau, double c_nu) {
        StrokeObjective obj;
        obj.target = target;
        obj.rho = rho;
        obj.max_evaluations = max_evaluations;
        obj.validate();
        const OptimizationResult r = optimize_stroke(obj, make_drag(c_tau, c_nu, false));
        py::dict d;
        d["best_spec"] = bump_dict(r.best_spec);
        d["best_power"] = r.best_power;
        d["achieved_a"] = r.achieved_a;
        d["evaluations"] = r.evaluations;
        d["feasible"] = r.feasible;
        return d;
      },
      py::arg("target") = 0.05, py::arg("rho") = 0.01, py::arg("max_evaluations") = 200, py::arg("c_tau") = 1.0,
      py::arg("c_nu") = 2.0);

  m.def(
      "dissipation",
      [](const Points& points, const Points& velocity, double c_tau, double c_nu) {
        // power of a prescribed lab velocity field on a fixed curve
        const ArcCurve c = to_curve(points, 1.0);
        const std::vector<Vec2> t = tangents_of(c);
        const DragCoefficients d = make_drag(c_tau, c_nu, false);
        std::vector<double> f(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
          const Vec2 v = velocity.row(static_cast<Eigen::Index>(i)).transpose();
          f[i] = v.dot(drag_tensor(t[i], d) * v);
        }
        return trapezoid(f, c.spacing());
      },
      py::arg("points"), py::arg("velocity"), py::arg("c_tau") = 1.0, py::arg("c_nu") = 2.0);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"rftswim"};
        for (const std::string& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line tool in process; returns (exit code, stdout, stderr).");
}

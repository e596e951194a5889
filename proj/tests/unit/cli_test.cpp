#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rftswim/cli.hpp"
#include "support.hpp"

using namespace rftswim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

int run(std::vector<std::string> args, std::string* err_text = nullptr) {
  args.insert(args.begin(), "rftswim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("argument errors exit 2") {
  CHECK(run({}) == exit_parse);
  CHECK(run({"frobnicate"}) == exit_parse);
  CHECK(run({"simulate"}) == exit_parse);
  CHECK(run({"simulate", "--config", "/nonexistent/config.json"}) == exit_parse);
}

TEST_CASE("config errors exit 2") {
  const fs::path d = testing::scratch_dir("cli_cfg");
  spill(d / "bad.json", "{ \"rho\": ");
  CHECK(run({"simulate", "--config", (d / "bad.json").string(), "--out", (d / "o").string()}) == exit_parse);
  spill(d / "iso.json", R"({"drag": {"c_tau": 1, "c_nu": 1}})");
  std::string err;
  CHECK(run({"simulate", "--config", (d / "iso.json").string(), "--out", (d / "o").string()}, &err) == exit_parse);
  CHECK(err.find("InvalidDrag") != std::string::npos);
  CHECK(run({"simulate", "--config", (d / "iso.json").string(), "--out", (d / "o").string(), "--relaxed-mode"}) ==
        exit_ok);
  spill(d / "kind.json", R"({"simulate": {"maneuver": "cartwheel"}})");
  CHECK(run({"simulate", "--config", (d / "kind.json").string(), "--out", (d / "o").string()}) == exit_parse);
  spill(d / "type.json", R"({"rho": "small"})");
  CHECK(run({"simulate", "--config", (d / "type.json").string(), "--out", (d / "o").string()}) == exit_parse);
}

TEST_CASE("simulation errors exit 3 and name the module error") {
  const fs::path d = testing::scratch_dir("cli_sim_err");
  spill(d / "even.json", R"({"grid": {"N": 200}, "simulate": {"maneuver": "rotation"}})");
  std::string err;
  CHECK(run({"simulate", "--config", (d / "even.json").string(), "--out", (d / "o").string()}, &err) == exit_simulate);
  CHECK(err.find("InvalidArgument") != std::string::npos);
  spill(d / "amp.json", R"({"simulate": {"maneuver": "translation", "bump": {"amplitude": 2.0}}})");
  CHECK(run({"simulate", "--config", (d / "amp.json").string(), "--out", (d / "o").string()}, &err) == exit_simulate);
  CHECK(err.find("AmplitudeOutOfRange") != std::string::npos);
}

TEST_CASE("simulate writes a trajectory and summary") {
  const fs::path d = testing::scratch_dir("cli_sim");
  spill(d / "t.json", R"({"simulate": {"maneuver": "translation", "cycles": 2}, "frames": 5})");
  REQUIRE(run({"simulate", "--config", (d / "t.json").string(), "--out", (d / "o").string(), "--frames"}) == exit_ok);
  const TrajectoryTable t = read_trajectory_csv(d / "o" / "trajectory.csv");
  CHECK(t.t.size() == 2001);
  const Json s = read_json(d / "o" / "summary.json");
  CHECK(s.at("dx1").get<double>() > 0.0);
  CHECK(s.at("residual").at("force").get<double>() < 1e-8);
  CHECK(s.at("residual").at("torque").get<double>() < 1e-8);
  CHECK(s.at("power").get<double>() > 0.0);
  std::size_t svgs = 0;
  for (const auto& e : fs::directory_iterator(d / "o" / "frames")) svgs += e.path().extension() == ".svg";
  CHECK(svgs == 5);
}

TEST_CASE("rigid shape stays still") {
  const fs::path d = testing::scratch_dir("cli_rigid");
  write_curve_csv(d / "arc.csv", testing::circular_arc(1.0, 1.5, 201));
  spill(d / "r.json", R"({"simulate": {"maneuver": "rigid", "curve": "arc.csv"}})");
  REQUIRE(run({"simulate", "--config", (d / "r.json").string(), "--out", (d / "o").string()}) == exit_ok);
  const TrajectoryTable t = read_trajectory_csv(d / "o" / "trajectory.csv");
  for (std::size_t j = 0; j < t.t.size(); ++j) {
    CHECK(t.x1[j] == t.x1[0]);
    CHECK(t.theta[j] == t.theta[0]);
  }
}

TEST_CASE("isotropic drag leaves the barycenter in place") {
  const fs::path d = testing::scratch_dir("cli_iso");
  spill(d / "i.json", R"({"drag": {"c_tau": 1, "c_nu": 1}, "relaxed_mode": true,
                          "simulate": {"maneuver": "translation"}})");
  REQUIRE(run({"simulate", "--config", (d / "i.json").string(), "--out", (d / "o").string()}) == exit_ok);
  CHECK(read_json(d / "o" / "summary.json").at("barycenter_drift").get<double>() < 1e-8);
}

TEST_CASE("profile sequences simulate") {
  const fs::path d = testing::scratch_dir("cli_prof");
  AngleProfile a, b;
  a.theta.assign(101, 0.0);
  b.theta.assign(101, 0.0);
  for (std::size_t i = 0; i < 101; ++i) b.theta[i] = 0.5 * std::sin(pi * i / 100.0);
  write_angle_csv(d / "a.csv", a);
  write_angle_csv(d / "b.csv", b);
  spill(d / "p.json", R"({"grid": {"N": 101}, "simulate": {"maneuver": "profiles", "times": [0, 0.5, 1],
                          "files": ["a.csv", "b.csv", "a.csv"]}})");
  REQUIRE(run({"simulate", "--config", (d / "p.json").string(), "--out", (d / "o").string()}) == exit_ok);
  CHECK(read_json(d / "o" / "summary.json").at("residual").at("force").get<double>() < 1e-8);
}

TEST_CASE("validate exit codes") {
  const fs::path d = testing::scratch_dir("cli_val");
  write_curve_csv(d / "line.csv", straight_segment(1.0, 101));
  const double r = 1.0 / (2.0 * pi);
  write_curve_csv(d / "circle.csv", testing::circular_arc(1.0, r, 201));
  spill(d / "ok.json", R"({"rho": 1, "validate": {"curve": "line.csv"}})");
  spill(d / "bad.json", R"({"rho": 0.3183, "validate": {"curve": "circle.csv"}})");
  spill(d / "missing.json", R"({"validate": {"curve": "nothing.csv"}})");
  CHECK(run({"validate", "--config", (d / "ok.json").string(), "--out", (d / "a").string()}) == exit_ok);
  CHECK(read_json(d / "a" / "report.json").at("ok") == true);
  CHECK(run({"validate", "--config", (d / "bad.json").string(), "--out", (d / "b").string()}) == exit_invalid);
  const TwoDisksReport rep = report_from_json(read_json(d / "b" / "report.json"));
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.violations.empty());
  CHECK(run({"validate", "--config", (d / "missing.json").string(), "--out", (d / "c").string()}) == exit_parse);
}

TEST_CASE("plan exit codes and outputs") {
  const fs::path d = testing::scratch_dir("cli_plan");
  write_curve_csv(d / "a.csv", straight_segment(1.0, 201));
  write_curve_csv(d / "b.csv", straight_segment(1.0, 201, {0.03, 0.0}));
  write_curve_csv(d / "semi.csv", testing::circular_arc(1.0, 1.0 / pi, 201));
  spill(d / "p.json", R"({"rho": 0.01, "T": 2, "plan": {"chi_in": "a.csv", "chi_fin": "b.csv"}})");
  REQUIRE(run({"plan", "--config", (d / "p.json").string(), "--out", (d / "o").string()}) == exit_ok);
  const Json plan = read_json(d / "o" / "plan.json");
  CHECK(plan.at("segments").size() == 1);
  const Json s = read_json(d / "o" / "summary.json");
  CHECK(s.at("final_error").get<double>() < 1e-6);
  CHECK(s.at("two_disks").at("ok") == true);
  CHECK(read_trajectory_csv(d / "o" / "trajectory.csv").t.back() == 2.0);
  CHECK_NOTHROW(read_curve_csv(d / "o" / "final_curve.csv"));

  spill(d / "s.json", R"({"rho": 0.01, "plan": {"chi_in": "semi.csv", "chi_fin": "a.csv"}})");
  std::string err;
  CHECK(run({"plan", "--config", (d / "s.json").string(), "--out", (d / "o2").string()}, &err) == exit_straighten);
  CHECK(err.find("NotStraightenable") != std::string::npos);
}

TEST_CASE("optimize exit codes") {
  const fs::path d = testing::scratch_dir("cli_opt");
  spill(d / "zero.json", R"({"optimize": {"target": 0, "max_evaluations": 5}})");
  REQUIRE(run({"optimize", "--config", (d / "zero.json").string(), "--out", (d / "o").string()}) == exit_ok);
  const OptimizationResult r = result_from_json(read_json(d / "o" / "result.json"));
  CHECK(r.best_power == 0.0);
  CHECK(r.feasible);
  spill(d / "far.json", R"({"rho": 0.5, "optimize": {"target": 0.05, "max_evaluations": 5}})");
  CHECK(run({"optimize", "--config", (d / "far.json").string(), "--out", (d / "o2").string()}) == exit_unreachable);
  spill(d / "box.json", R"({"optimize": {"bounds": {"lower": {"amplitude": 0.7}, "upper": {"amplitude": 0.6}}}})");
  CHECK(run({"optimize", "--config", (d / "box.json").string(), "--out", (d / "o3").string()}) == exit_parse);
}

TEST_CASE("repeated runs are byte identical, whatever the thread count") {
  const fs::path d = testing::scratch_dir("cli_det");
  write_curve_csv(d / "a.csv", testing::circular_arc(1.0, 2.0, 201));
  write_curve_csv(d / "b.csv", testing::circular_arc(1.0, 2.0, 201).transformed(rotation(0.0), {0.02, 0.0}));
  spill(d / "p.json", R"({"rho": 0.01, "plan": {"chi_in": "a.csv", "chi_fin": "b.csv"}})");
  ::setenv("SWIM_THREADS", "1", 1);
  REQUIRE(run({"plan", "--config", (d / "p.json").string(), "--out", (d / "one").string()}) == exit_ok);
  ::setenv("SWIM_THREADS", "3", 1);
  REQUIRE(run({"plan", "--config", (d / "p.json").string(), "--out", (d / "two").string()}) == exit_ok);
  ::unsetenv("SWIM_THREADS");
  for (const char* f : {"plan.json", "trajectory.csv", "summary.json", "final_curve.csv"})
    CHECK(slurp(d / "one" / f) == slurp(d / "two" / f));
}

}  // TEST_SUITE

#include "rftswim/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace rftswim {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void parse_error(const fs::path& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path.string() + ": " + what);
}

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

/// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<std::vector<double>> read_table(const fs::path& path, const std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) parse_error(path, "cannot open");
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::vector<std::vector<double>> cols(header.size());
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!seen_header) {
      if (cells != header) {
        std::string want;
        for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
        parse_error(path, "expected header '" + want + "'");
      }
      seen_header = true;
      continue;
    }
    if (cells.size() != header.size())
      parse_error(path, "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) + " fields");
    for (std::size_t k = 0; k < cells.size(); ++k) {
      double v = 0.0;
      const char* b = cells[k].data();
      const char* e = b + cells[k].size();
      const auto r = std::from_chars(b, e, v);
      if (r.ec != std::errc() || r.ptr != e || !std::isfinite(v))
        parse_error(path, "line " + std::to_string(line_no) + ": bad number '" + cells[k] + "'");
      cols[k].push_back(v);
    }
  }
  if (!seen_header) parse_error(path, "empty file");
  return cols;
}

void write_table(const fs::path& path, const std::vector<std::string>& header,
                 const std::vector<const std::vector<double>*>& cols) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  const std::size_t rows = cols.empty() ? 0 : cols.front()->size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << fmt((*cols[k])[i]);
    out << '\n';
  }
}

// Arc-length column: starts at 0, uniform, returns the length.
double check_arc_column(const fs::path& path, const std::vector<double>& s) {
  if (s.size() < 3) parse_error(path, "need at least 3 samples");
  const double L = s.back();
  if (s.front() != 0.0 || !(L > 0.0)) parse_error(path, "s must run from 0 to a positive length");
  const double h = L / static_cast<double>(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::abs(s[i] - h * static_cast<double>(i)) > 1e-9 * L) parse_error(path, "s must be uniformly spaced");
  return L;
}

Json vec_json(const Vec2& v) { return Json::array({v.x(), v.y()}); }
Vec2 vec_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Json state_json(const RigidState& s) { return {{"x", vec_json(s.x)}, {"theta", s.theta}}; }
RigidState state_from(const Json& j) { return {vec_from(j.at("x")), j.at("theta").get<double>()}; }

Json pose_json(const Pose& p) { return {{"start", vec_json(p.start)}, {"direction", p.direction}}; }
Pose pose_from(const Json& j) { return {vec_from(j.at("start")), j.at("direction").get<double>()}; }

DiskRegion region_from(const std::string& s) {
  for (DiskRegion r : {DiskRegion::Left, DiskRegion::Right, DiskRegion::StartCap, DiskRegion::EndCap})
    if (s == region_name(r)) return r;
  throw Error(ErrorCode::ParseError, "unknown disk region '" + s + "'");
}

SegmentKind kind_from(const std::string& s) {
  for (SegmentKind k : {SegmentKind::Straighten, SegmentKind::Rotate, SegmentKind::Translate, SegmentKind::Unstraighten})
    if (s == segment_name(k)) return k;
  throw Error(ErrorCode::ParseError, "unknown segment type '" + s + "'");
}

// JSON has no infinity; the clearance of a clean curve is written as null.
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class F>
auto parsing(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

ArcCurve read_curve_csv(const fs::path& path) {
  const auto cols = read_table(path, {"s", "x1", "x2"});
  const double L = check_arc_column(path, cols[0]);
  std::vector<Vec2> pts(cols[0].size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {cols[1][i], cols[2][i]};
  try {
    return ArcCurve(L, std::move(pts));
  } catch (const Error& e) {
    parse_error(path, e.what());
  }
}

void write_curve_csv(const fs::path& path, const ArcCurve& curve) {
  std::vector<double> s(curve.size()), x(curve.size()), y(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    s[i] = curve.s(i);
    x[i] = curve[i].x();
    y[i] = curve[i].y();
  }
  write_table(path, {"s", "x1", "x2"}, {&s, &x, &y});
}

AngleProfile read_angle_csv(const fs::path& path) {
  const auto cols = read_table(path, {"s", "theta"});
  AngleProfile a;
  a.length = check_arc_column(path, cols[0]);
  a.theta = cols[1];
  return a;
}

void write_angle_csv(const fs::path& path, const AngleProfile& profile) {
  std::vector<double> s(profile.size()), th(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    s[i] = profile.spacing() * static_cast<double>(i);
    th[i] = profile.theta[i] + profile.base_angle_offset;
  }
  write_table(path, {"s", "theta"}, {&s, &th});
}

TrajectoryTable trajectory_table(const Trajectory& traj) {
  TrajectoryTable t;
  t.t = traj.times();
  t.power_density = power_density(traj);
  for (const auto& s : traj.states()) {
    t.x1.push_back(s.x.x());
    t.x2.push_back(s.x.y());
    t.theta.push_back(s.theta);
  }
  return t;
}

void write_trajectory_csv(const fs::path& path, const TrajectoryTable& t) {
  write_table(path, {"t", "x1", "x2", "theta", "power_density"}, {&t.t, &t.x1, &t.x2, &t.theta, &t.power_density});
}

TrajectoryTable read_trajectory_csv(const fs::path& path) {
  auto cols = read_table(path, {"t", "x1", "x2", "theta", "power_density"});
  return {std::move(cols[0]), std::move(cols[1]), std::move(cols[2]), std::move(cols[3]), std::move(cols[4])};
}

Json to_json(const BumpSpec& s) {
  return {{"amplitude", s.amplitude}, {"half_length", s.half_length}, {"duty", s.duty}, {"profile_id", s.profile_id}};
}

BumpSpec bump_from_json(const Json& j, const BumpSpec& defaults) {
  return parsing([&] {
    BumpSpec s = defaults;
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "bump must be an object");
    if (j.contains("amplitude")) s.amplitude = j.at("amplitude").get<double>();
    if (j.contains("half_length")) s.half_length = j.at("half_length").get<double>();
    if (j.contains("duty")) s.duty = j.at("duty").get<double>();
    if (j.contains("profile_id")) s.profile_id = j.at("profile_id").get<std::string>();
    return s;
  });
}

Json to_json(const TwoDisksReport& r) {
  Json v = Json::array();
  for (const auto& d : r.violations)
    v.push_back({{"s_index", d.s_index}, {"sigma_index", d.sigma_index}, {"region", region_name(d.region)},
                 {"depth", d.depth}});
  Json j = {{"ok", r.ok},
            {"rho", r.rho},
            {"max_curvature", r.max_curvature},
            {"worst_clearance", finite_or_null(r.worst_clearance)},
            {"violations", v}};
  if (r.time) j["time"] = *r.time;
  return j;
}

TwoDisksReport report_from_json(const Json& j) {
  return parsing([&] {
    TwoDisksReport r;
    r.ok = j.at("ok").get<bool>();
    r.rho = j.at("rho").get<double>();
    r.max_curvature = j.at("max_curvature").get<double>();
    const Json& c = j.at("worst_clearance");
    r.worst_clearance = c.is_null() ? std::numeric_limits<double>::infinity() : c.get<double>();
    for (const auto& v : j.at("violations"))
      r.violations.push_back({v.at("s_index").get<std::size_t>(), v.at("sigma_index").get<std::size_t>(),
                              region_from(v.at("region").get<std::string>()), v.at("depth").get<double>()});
    if (j.contains("time")) r.time = j.at("time").get<double>();
    return r;
  });
}

Json to_json(const ManeuverPlan& plan) {
  Json segs = Json::array();
  for (const auto& s : plan.segments) {
    segs.push_back({{"type", segment_name(s.kind)},
                    {"params",
                     {{"target", s.target},
                      {"cycles", s.cycles},
                      {"bump", to_json(s.bump)},
                      {"remainder", s.remainder ? to_json(*s.remainder) : Json(nullptr)},
                      {"units", s.units}}},
                    {"duration_share", (s.t_end - s.t_begin) / plan.duration},
                    {"t_begin", s.t_begin},
                    {"t_end", s.t_end},
                    {"measured", {{"dx1", s.measured_dx1}, {"dtheta", s.measured_dtheta}}},
                    {"start", state_json(s.start)},
                    {"end", state_json(s.end)}});
  }
  return {{"duration", plan.duration},
          {"ramp_rotation", plan.ramp_rotation},
          {"straight_in", pose_json(plan.straight_in)},
          {"straight_fin", pose_json(plan.straight_fin)},
          {"final_error", plan.final_error},
          {"segments", segs}};
}

ManeuverPlan plan_from_json(const Json& j) {
  return parsing([&] {
    ManeuverPlan p;
    p.duration = j.at("duration").get<double>();
    p.ramp_rotation = j.at("ramp_rotation").get<double>();
    p.straight_in = pose_from(j.at("straight_in"));
    p.straight_fin = pose_from(j.at("straight_fin"));
    p.final_error = j.at("final_error").get<double>();
    for (const auto& s : j.at("segments")) {
      PlanSegment seg;
      seg.kind = kind_from(s.at("type").get<std::string>());
      const Json& par = s.at("params");
      seg.target = par.at("target").get<double>();
      seg.cycles = par.at("cycles").get<std::size_t>();
      seg.bump = bump_from_json(par.at("bump"));
      if (!par.at("remainder").is_null()) seg.remainder = bump_from_json(par.at("remainder"));
      seg.units = par.at("units").get<double>();
      seg.t_begin = s.at("t_begin").get<double>();
      seg.t_end = s.at("t_end").get<double>();
      seg.measured_dx1 = s.at("measured").at("dx1").get<double>();
      seg.measured_dtheta = s.at("measured").at("dtheta").get<double>();
      seg.start = state_from(s.at("start"));
      seg.end = state_from(s.at("end"));
      p.segments.push_back(std::move(seg));
    }
    return p;
  });
}

Json to_json(const OptimizationResult& r) {
  return {{"best_spec", to_json(r.best_spec)},
          {"best_power", r.best_power},
          {"achieved_a", r.achieved_a},
          {"evaluations", r.evaluations},
          {"feasible", r.feasible},
          {"plan",
           {{"full_cycles", r.plan.full_cycles},
            {"full_displacement", r.plan.full_displacement},
            {"remainder", r.plan.remainder ? to_json(*r.plan.remainder) : Json(nullptr)},
            {"remainder_displacement", r.plan.remainder_displacement}}}};
}

OptimizationResult result_from_json(const Json& j) {
  return parsing([&] {
    OptimizationResult r;
    r.best_spec = bump_from_json(j.at("best_spec"));
    r.best_power = j.at("best_power").get<double>();
    r.achieved_a = j.at("achieved_a").get<double>();
    r.evaluations = j.at("evaluations").get<std::size_t>();
    r.feasible = j.at("feasible").get<bool>();
    if (j.contains("plan")) {
      const Json& p = j.at("plan");
      r.plan.base = r.best_spec;
      r.plan.full_cycles = p.at("full_cycles").get<std::size_t>();
      r.plan.full_displacement = p.at("full_displacement").get<double>();
      if (!p.at("remainder").is_null()) r.plan.remainder = bump_from_json(p.at("remainder"));
      r.plan.remainder_displacement = p.at("remainder_displacement").get<double>();
    }
    return r;
  });
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) parse_error(path, "cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_error(path, e.what());
  }
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::vector<fs::path> write_svg_frames(const fs::path& dir, const Trajectory& traj, std::size_t frames) {
  fs::create_directories(dir);
  frames = std::max<std::size_t>(1, std::min(frames, traj.size()));
  std::vector<std::size_t> picks;
  for (std::size_t k = 0; k < frames; ++k)
    picks.push_back(frames == 1 ? traj.size() - 1 : k * (traj.size() - 1) / (frames - 1));

  std::vector<std::vector<Vec2>> curves;
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  for (std::size_t j : picks) {
    curves.push_back(traj.lab_curve(j).points());
    for (const Vec2& p : curves.back()) {
      // SVG y grows downward; flip so the picture matches the lab frame.
      x0 = std::min(x0, p.x());
      x1 = std::max(x1, p.x());
      y0 = std::min(y0, -p.y());
      y1 = std::max(y1, -p.y());
    }
  }
  const double pad = 0.05 * std::max({x1 - x0, y1 - y0, 1e-9});
  x0 -= pad, y0 -= pad, x1 += pad, y1 += pad;
  const double stroke = 0.004 * std::max(x1 - x0, y1 - y0);

  std::vector<fs::path> written;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.svg", k);
    const fs::path file = dir / name;
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + file.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(x0) << ' ' << fmt(y0) << ' '
        << fmt(x1 - x0) << ' ' << fmt(y1 - y0) << "\">\n";
    out << "<!-- t = " << fmt(traj.times()[picks[k]]) << " -->\n";
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt(stroke) << "\" points=\"";
    for (std::size_t i = 0; i < curves[k].size(); ++i)
      out << (i ? " " : "") << fmt(curves[k][i].x()) << ',' << fmt(-curves[k][i].y());
    out << "\"/>\n</svg>\n";
    written.push_back(file);
  }
  return written;
}

}  // namespace rftswim

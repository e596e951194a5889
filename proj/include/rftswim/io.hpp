#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rftswim/energetics.hpp"

namespace rftswim {

using Json = nlohmann::ordered_json;

// CSV ---------------------------------------------------------------------

/// Header "s,x1,x2". The length is the last s; s must be uniform from 0.
ArcCurve read_curve_csv(const std::filesystem::path& path);
void write_curve_csv(const std::filesystem::path& path, const ArcCurve& curve);

/// Header "s,theta". The base sits at the origin.
AngleProfile read_angle_csv(const std::filesystem::path& path);
void write_angle_csv(const std::filesystem::path& path, const AngleProfile& profile);

/// One row per time node.
struct TrajectoryTable {
  std::vector<double> t, x1, x2, theta, power_density;
};

/// Header "t,x1,x2,theta,power_density".
TrajectoryTable trajectory_table(const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryTable& table);
TrajectoryTable read_trajectory_csv(const std::filesystem::path& path);

// JSON --------------------------------------------------------------------

Json to_json(const BumpSpec& spec);
BumpSpec bump_from_json(const Json& j, const BumpSpec& defaults = {});

Json to_json(const TwoDisksReport& report);
TwoDisksReport report_from_json(const Json& j);

Json to_json(const ManeuverPlan& plan);
ManeuverPlan plan_from_json(const Json& j);

Json to_json(const OptimizationResult& result);
OptimizationResult result_from_json(const Json& j);

Json read_json(const std::filesystem::path& path);
/// Two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

// SVG ---------------------------------------------------------------------

/// Writes frames evenly spread over the time nodes, one polyline each, named
/// frame_0000.svg and up. All frames share a viewBox fitted to the lab
/// curves of the chosen nodes.
std::vector<std::filesystem::path> write_svg_frames(const std::filesystem::path& dir, const Trajectory& traj,
                                                    std::size_t frames = 50);

}  // namespace rftswim

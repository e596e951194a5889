#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rftswim/dynamics.hpp"

namespace rftswim {

enum class DiskRegion { Left, Right, StartCap, EndCap };

const char* region_name(DiskRegion r);

/// One curve node found inside a forbidden disk.
struct DiskViolation {
  std::size_t s_index = 0;      // node owning the disk (0 or N-1 for caps)
  std::size_t sigma_index = 0;  // deepest offending node
  DiskRegion region = DiskRegion::Left;
  double depth = 0.0;           // penetration below the shrunk radius
};

struct TwoDisksReport {
  bool ok = true;
  double rho = 0.0;
  double max_curvature = 0.0;
  double worst_clearance = 0.0;  // minus the deepest penetration, 0 if none
  std::vector<DiskViolation> violations;
  std::optional<double> time;    // set by trajectory checks: worst node time
};

/// Tangent disks of radius rho*(1 - tol) centred at xi_i +- rho n_i must hold
/// no other node, and the outward half disks of radius 2 rho (1 - tol) at the
/// ends must hold no node. tol = h / (2 rho) absorbs sampling error. One
/// violation is kept per disk, the deepest.
TwoDisksReport check_two_disks(const ArcCurve& curve, double rho);

/// Samples the tube map (s, y) -> xi(s) + y n(s) for |y| < rho plus the end
/// caps, and reports false when two samples whose parameters are at least
/// rho/2 apart land within rho/(4 N_y) of each other.
bool check_h_injectivity(const ArcCurve& curve, double rho, std::size_t transverse_samples = 21);

/// Sufficient condition for the two-disks property: in the frame centring the
/// angle range, |theta| < pi/4, and |kappa| <= 1/rho everywhere.
bool graph_criterion(const ArcCurve& curve, double rho);

/// Worst two-disks report over all time nodes; the body shape is checked
/// since the property is invariant under rigid motion.
TwoDisksReport check_trajectory(const Trajectory& traj, double rho);

}  // namespace rftswim

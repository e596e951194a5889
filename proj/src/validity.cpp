#include "rftswim/validity.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "rftswim/parallel.hpp"

namespace rftswim {

const char* region_name(DiskRegion r) {
  switch (r) {
    case DiskRegion::Left: return "left";
    case DiskRegion::Right: return "right";
    case DiskRegion::StartCap: return "start";
    case DiskRegion::EndCap: return "end";
  }
  return "unknown";
}

namespace {

double max_abs_curvature(const AngleProfile& a) {
  double m = 0.0;
  for (double k : curvature_of(a).kappa) m = std::max(m, std::abs(k));
  return m;
}

/// Points binned on a square grid, sorted by cell, for disk queries.
class PointGrid {
 public:
  PointGrid(const std::vector<Vec2>& p, double cell) : p_(p), cell_(cell), order_(p.size()) {
    keys_.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) keys_[i] = key(index(p[i].x()), index(p[i].y()));
    for (std::size_t i = 0; i < p.size(); ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return keys_[a] < keys_[b]; });
    sorted_.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) sorted_[i] = keys_[order_[i]];
  }

  /// Calls fn(j) for every point that may lie within radius of centre.
  template <class F>
  void near(const Vec2& centre, double radius, F&& fn) const {
    const long long x0 = index(centre.x() - radius), x1 = index(centre.x() + radius);
    const long long y0 = index(centre.y() - radius), y1 = index(centre.y() + radius);
    for (long long x = x0; x <= x1; ++x)
      for (long long y = y0; y <= y1; ++y) {
        const auto [lo, hi] = std::equal_range(sorted_.begin(), sorted_.end(), key(x, y));
        for (auto it = lo; it != hi; ++it) fn(order_[static_cast<std::size_t>(it - sorted_.begin())]);
      }
  }

 private:
  long long index(double v) const { return static_cast<long long>(std::floor(v / cell_)); }
  static long long key(long long x, long long y) { return (x << 32) + (y & 0xffffffffLL); }

  const std::vector<Vec2>& p_;
  double cell_;
  std::vector<std::size_t> order_;
  std::vector<long long> keys_, sorted_;
};

void require_positive_rho(double rho) {
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
}

}  // namespace

TwoDisksReport check_two_disks(const ArcCurve& curve, double rho) {
  require_positive_rho(rho);
  const std::size_t n = curve.size();
  const double h = curve.spacing();
  const auto& p = curve.points();
  const AngleProfile angles = curve_to_angle(curve);

  TwoDisksReport rep;
  rep.rho = rho;
  rep.max_curvature = max_abs_curvature(angles);

  const double tol = 0.5 * h / rho;
  const double r_disk = rho * (1.0 - tol);
  const double r_cap = 2.0 * rho * (1.0 - tol);

  const PointGrid grid(p, std::max(r_cap, 1e-3 * curve.length()));
  auto probe = [&](std::size_t owner, DiskRegion region, const Vec2& centre, double radius, const Vec2* outward) {
    DiskViolation worst{owner, 0, region, 0.0};
    grid.near(centre, radius, [&](std::size_t j) {
      if (j == owner) return;
      const Vec2 d = p[j] - centre;
      if (outward && !(d.dot(*outward) > 0.0)) return;
      const double depth = radius - d.norm();
      if (depth > worst.depth || (depth == worst.depth && depth > 0.0 && j < worst.sigma_index)) {
        worst.depth = depth;
        worst.sigma_index = j;
      }
    });
    if (worst.depth > 0.0) rep.violations.push_back(worst);
  };

  if (r_disk > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 nrm = rot90(unit(angles.theta[i]));
      probe(i, DiskRegion::Left, p[i] + rho * nrm, r_disk, nullptr);
      probe(i, DiskRegion::Right, p[i] - rho * nrm, r_disk, nullptr);
    }
  }
  if (r_cap > 0.0) {
    const Vec2 out0 = -unit(angles.theta.front());
    const Vec2 out1 = unit(angles.theta.back());
    probe(0, DiskRegion::StartCap, p.front(), r_cap, &out0);
    probe(n - 1, DiskRegion::EndCap, p.back(), r_cap, &out1);
  }

  rep.ok = rep.violations.empty();
  for (const auto& v : rep.violations) rep.worst_clearance = std::min(rep.worst_clearance, -v.depth);
  return rep;
}

bool check_h_injectivity(const ArcCurve& curve, double rho, std::size_t ny) {
  require_positive_rho(rho);
  if (ny < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 transverse samples");
  const std::size_t n = curve.size();
  const double h = curve.spacing();
  const double L = curve.length();
  const auto& p = curve.points();
  const AngleProfile angles = curve_to_angle(curve);

  const double dy = 2.0 * rho / static_cast<double>(ny);
  const double ds = std::min(h, dy);
  const double sep = rho / (4.0 * static_cast<double>(ny));
  const double apart = 0.5 * rho;

  std::vector<double> ys(ny);
  for (std::size_t k = 0; k < ny; ++k) ys[k] = rho * (2.0 * static_cast<double>(k) + 1.0 - static_cast<double>(ny)) /
                                               static_cast<double>(ny);

  struct Sample {
    Vec2 image;
    double s, y;
  };
  std::vector<Sample> samples;

  // Body: positions and angles interpolated linearly between nodes.
  const std::size_t ns = static_cast<std::size_t>(std::ceil(L / ds)) + 1;
  for (std::size_t m = 0; m < ns; ++m) {
    const double s = std::min(L, ds * static_cast<double>(m));
    const double u = s / h;
    const std::size_t i = std::min(n - 2, static_cast<std::size_t>(u));
    const double w = u - static_cast<double>(i);
    const Vec2 base = (1.0 - w) * p[i] + w * p[i + 1];
    const Vec2 nrm = rot90(unit((1.0 - w) * angles.theta[i] + w * angles.theta[i + 1]));
    for (double y : ys) samples.push_back({base + y * nrm, s, y});
  }
  // Caps: rigid extensions beyond each end, clipped to the disk of radius rho.
  auto cap = [&](const Vec2& end, double theta, double s_end, double dir) {
    const Vec2 t = unit(theta), nrm = rot90(t);
    for (double off = ds; off < rho; off += ds)
      for (double y : ys)
        if (off * off + y * y < rho * rho) samples.push_back({end + dir * off * t + y * nrm, s_end + dir * off, y});
  };
  cap(p.front(), angles.theta.front(), 0.0, -1.0);
  cap(p.back(), angles.theta.back(), L, 1.0);

  auto key = [&](long long a, long long b) { return (a << 32) ^ (b & 0xffffffffLL); };
  auto cell = [&](double v) { return static_cast<long long>(std::floor(v / sep)); };
  std::unordered_map<long long, std::vector<std::size_t>> grid;
  grid.reserve(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k)
    grid[key(cell(samples[k].image.x()), cell(samples[k].image.y()))].push_back(k);

  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Sample& a = samples[k];
    const long long cx = cell(a.image.x()), cy = cell(a.image.y());
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dyc = -1; dyc <= 1; ++dyc) {
        auto it = grid.find(key(cx + dx, cy + dyc));
        if (it == grid.end()) continue;
        for (std::size_t m : it->second) {
          if (m <= k) continue;
          const Sample& b = samples[m];
          if ((a.image - b.image).norm() >= sep) continue;
          if (std::hypot(a.s - b.s, a.y - b.y) >= apart) return false;
        }
      }
  }
  return true;
}

bool graph_criterion(const ArcCurve& curve, double rho) {
  require_positive_rho(rho);
  const AngleProfile angles = curve_to_angle(curve);
  const auto [lo, hi] = std::minmax_element(angles.theta.begin(), angles.theta.end());
  if (!(*hi - *lo < 0.5 * pi)) return false;
  return max_abs_curvature(angles) <= 1.0 / rho;
}

TwoDisksReport check_trajectory(const Trajectory& traj, double rho) {
  require_positive_rho(rho);
  std::vector<TwoDisksReport> reports(traj.size());
  parallel_for(traj.size(), [&](std::size_t j) { reports[j] = check_two_disks(traj.body_curve(j), rho); });

  std::size_t worst = 0;
  double max_kappa = 0.0;
  for (std::size_t j = 0; j < reports.size(); ++j) {
    max_kappa = std::max(max_kappa, reports[j].max_curvature);
    if (reports[j].worst_clearance < reports[worst].worst_clearance) worst = j;
  }
  TwoDisksReport out = reports[worst];
  out.max_curvature = max_kappa;
  out.time = traj.times()[worst];
  return out;
}

}  // namespace rftswim

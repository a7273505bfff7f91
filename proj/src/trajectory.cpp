#include "radargait/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radargait/rng.hpp"
#include "radargait/windowing.hpp"

namespace radargait {

namespace {

struct LineFit {
  double x0, vx, y0, vy;  // relative to a shifted time axis
  double t_shift;
};

// Least squares of x(t) = x0 + vx * t and y(t) = y0 + vy * t over the
// given indices, with the time axis centered on its mean for conditioning.
LineFit least_squares_fit(const std::vector<RadarTarget>& targets,
                          const std::vector<std::size_t>& idx) {
  double tm = 0.0, xm = 0.0, ym = 0.0;
  for (std::size_t i : idx) {
    tm += targets[i].t;
    xm += targets[i].x;
    ym += targets[i].y;
  }
  const double n = static_cast<double>(idx.size());
  tm /= n;
  xm /= n;
  ym /= n;
  double stt = 0.0, stx = 0.0, sty = 0.0;
  for (std::size_t i : idx) {
    const double dt = targets[i].t - tm;
    stt += dt * dt;
    stx += dt * (targets[i].x - xm);
    sty += dt * (targets[i].y - ym);
  }
  LineFit fit;
  fit.t_shift = tm;
  fit.x0 = xm;
  fit.y0 = ym;
  fit.vx = stt > 0.0 ? stx / stt : 0.0;
  fit.vy = stt > 0.0 ? sty / stt : 0.0;
  return fit;
}

double sq_residual(const RadarTarget& rt, double x0, double vx, double y0,
                   double vy, double t_shift) {
  const double rx = rt.x - (x0 + vx * (rt.t - t_shift));
  const double ry = rt.y - (y0 + vy * (rt.t - t_shift));
  return rx * rx + ry * ry;
}

}  // namespace

LinearTrajectory fit_trajectory(const TargetWindow& w, const RansacConfig& cfg,
                                std::uint64_t seed) {
  const auto& ts = w.targets;
  const std::size_t n = ts.size();
  if (n < kMinTargetsPerWindow) {
    throw std::invalid_argument("fit_trajectory: window below minimum size");
  }
  if (ts.back().t - ts.front().t <= 0.5) {
    throw std::invalid_argument("fit_trajectory: window time span too short");
  }

  const std::size_t min_inliers =
      std::max(cfg.min_inliers_floor,
               static_cast<std::size_t>(cfg.min_inliers_ratio *
                                        static_cast<double>(n)));
  const double band_sq = cfg.inlier_band_m * cfg.inlier_band_m;

  Rng rng(seed);
  std::vector<std::size_t> best_inliers;
  for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
    // Sample two targets with distinct timestamps; identical timestamps
    // give no velocity hypothesis and are simply redrawn.
    std::size_t a = 0, b = 0;
    bool ok = false;
    for (int attempt = 0; attempt < 64; ++attempt) {
      a = rng.uniform_index(n);
      b = rng.uniform_index(n);
      if (a != b && ts[a].t != ts[b].t) {
        ok = true;
        break;
      }
    }
    if (!ok) continue;  // all timestamps coincide; no hypothesis possible

    const double dt = ts[b].t - ts[a].t;
    const double vx = (ts[b].x - ts[a].x) / dt;
    const double vy = (ts[b].y - ts[a].y) / dt;

    std::vector<std::size_t> inliers;
    inliers.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (sq_residual(ts[i], ts[a].x, vx, ts[a].y, vy, ts[a].t) <= band_sq) {
        inliers.push_back(i);
      }
    }
    if (inliers.size() > best_inliers.size()) {
      best_inliers = std::move(inliers);
    }
  }

  if (best_inliers.size() < std::max<std::size_t>(min_inliers, 2)) {
    throw DegenerateTrajectory("fit_trajectory: too few inliers");
  }

  const LineFit fit = least_squares_fit(ts, best_inliers);
  LinearTrajectory traj;
  traj.origin = {fit.x0, fit.y0};
  traj.velocity = {fit.vx, fit.vy};
  traj.t_ref = fit.t_shift;
  traj.inlier_count = best_inliers.size();
  traj.v_ped = std::hypot(fit.vx, fit.vy);
  if (traj.v_ped < cfg.min_speed_mps) {
    throw DegenerateTrajectory("fit_trajectory: near-stationary trajectory");
  }
  return traj;
}

PathPolyline path_from_trajectory(const LinearTrajectory& traj) {
  // Two vertices one second apart along the travel direction; the segment
  // extends to infinity in the projection, so the extent is irrelevant.
  return PathPolyline{{traj.origin,
                       {traj.origin.x + traj.velocity.x,
                        traj.origin.y + traj.velocity.y}}};
}

std::vector<FrenetTarget> frenet_transform(const TargetWindow& w,
                                           const LinearTrajectory& traj) {
  if (!(traj.v_ped > 0.0)) {
    throw std::invalid_argument(
        "frenet_transform: zero-speed trajectory has no travel direction");
  }
  return frenet_transform(w, path_from_trajectory(traj));
}

std::vector<FrenetTarget> frenet_transform(const TargetWindow& w,
                                           const PathPolyline& path) {
  const auto& verts = path.vertices;
  if (verts.size() < 2) {
    throw std::invalid_argument("frenet_transform: path needs >= 2 vertices");
  }
  const std::size_t nseg = verts.size() - 1;
  std::vector<double> seg_len(nseg), cum_len(nseg, 0.0);
  for (std::size_t s = 0; s < nseg; ++s) {
    seg_len[s] = std::hypot(verts[s + 1].x - verts[s].x,
                            verts[s + 1].y - verts[s].y);
    if (!(seg_len[s] > 0.0)) {
      throw std::invalid_argument("frenet_transform: zero-length path segment");
    }
    if (s > 0) cum_len[s] = cum_len[s - 1] + seg_len[s - 1];
  }

  std::vector<FrenetTarget> out;
  out.reserve(w.targets.size());
  for (const auto& rt : w.targets) {
    double best_dist = std::numeric_limits<double>::infinity();
    FrenetTarget best;
    for (std::size_t s = 0; s < nseg; ++s) {
      const double ux = (verts[s + 1].x - verts[s].x) / seg_len[s];
      const double uy = (verts[s + 1].y - verts[s].y) / seg_len[s];
      const double px = rt.x - verts[s].x;
      const double py = rt.y - verts[s].y;
      double along = px * ux + py * uy;
      // End segments extend to infinity; interior joints clamp.
      if (s > 0) along = std::max(along, 0.0);
      if (s + 1 < nseg) along = std::min(along, seg_len[s]);
      const double cx = px - along * ux;
      const double cy = py - along * uy;
      const double dist = std::hypot(cx, cy);
      if (dist < best_dist) {
        best_dist = dist;
        best.d = cum_len[s] + along;
        // Left normal of the travel direction.
        best.n = px * (-uy) + py * ux;
        best.v = rt.v;
        best.t = rt.t;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace radargait

#ifndef RADARGAIT_TRAJECTORY_HPP
#define RADARGAIT_TRAJECTORY_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "radargait/types.hpp"

namespace radargait {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Constant-velocity straight-line motion model: p(t) = origin + velocity * (t - t_ref).
struct LinearTrajectory {
  Vec2 origin;
  Vec2 velocity;       // meters/second
  double t_ref = 0.0;  // seconds
  std::size_t inlier_count = 0;
  double v_ped = 0.0;  // Euclidean norm of velocity

  Vec2 position_at(double t) const {
    return {origin.x + velocity.x * (t - t_ref),
            origin.y + velocity.y * (t - t_ref)};
  }
};

// Target expressed relative to the fitted path: tangential arc-length d
// and signed orthogonal offset n (positive to the left of the travel
// direction). Doppler and timestamp are carried through unchanged.
struct FrenetTarget {
  double d = 0.0;  // meters
  double n = 0.0;  // meters
  double v = 0.0;  // meters/second
  double t = 0.0;  // seconds
};

struct RansacConfig {
  std::size_t iterations = 200;
  // Distance to the predicted torso position at the target's own
  // timestamp. Covers the sensor's 0.2 m point accuracy plus the body
  // extent: a stance foot sits up to half a step from the torso, so a
  // tight band rejects most limb returns and biases the speed estimate
  // toward whichever limbs happen to fall inside.
  double inlier_band_m = 1.0;
  std::size_t min_inliers_floor = 10;   // min_inliers = max(floor, ratio * N)
  double min_inliers_ratio = 0.5;
  double min_speed_mps = 0.1;           // slower fits are degenerate
};

// Raised when RANSAC cannot produce a usable trajectory (too few inliers
// or a near-stationary fit). Callers skip the window.
class DegenerateTrajectory : public std::runtime_error {
 public:
  explicit DegenerateTrajectory(const std::string& what)
      : std::runtime_error(what) {}
};

// RANSAC over (t, x, y); Doppler plays no part in the fit. Two random
// targets define a hypothesis, inliers are counted against the spatial
// residual at each target's own timestamp, and the largest inlier set is
// refit with overdetermined linear least squares per axis. Deterministic
// given the seed.
LinearTrajectory fit_trajectory(const TargetWindow& w, const RansacConfig& cfg,
                                std::uint64_t seed);

// Reference path for the projection. The fitted straight line is the only
// path used in this pipeline, but any polyline can be supplied; the first
// and last segments extend to infinity so a two-vertex polyline reproduces
// the exact straight-line projection.
struct PathPolyline {
  std::vector<Vec2> vertices;
};

PathPolyline path_from_trajectory(const LinearTrajectory& traj);

// Projects every target of the window onto the path, preserving input
// order. Throws std::invalid_argument if the trajectory speed is zero.
std::vector<FrenetTarget> frenet_transform(const TargetWindow& w,
                                           const LinearTrajectory& traj);

std::vector<FrenetTarget> frenet_transform(const TargetWindow& w,
                                           const PathPolyline& path);

}  // namespace radargait

#endif  // RADARGAIT_TRAJECTORY_HPP

#ifndef RADARGAIT_GAIT_SIM_HPP
#define RADARGAIT_GAIT_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "radargait/types.hpp"

namespace radargait {

// One simulated pedestrian. For the walk class the stride length follows
// the walking model, so the closed-form height estimate is exact on
// noiseless output; the other classes are deliberately simple signature
// models whose only job is separability with known ground truth.
struct SubjectSpec {
  double height_m = 1.75;           // 1.4 .. 2.1
  MotionClass motion = MotionClass::kWalk;
  double speed_mps = 1.2;           // per-class bounds, see speed_bounds()
  double heading_rad = 0.0;
  double start_x = 0.0;
  double start_y = 0.0;
  std::uint64_t seed = 0;
  std::string track_id = "track-0";
  std::string subject_id = "subject-0";
  std::string recording_id = "rec-0";
};

struct SimConfig {
  double duration_s = 45.0;
  double mean_dt_s = 0.018;         // nominal sensor frame spacing
  double dt_jitter = 0.3;           // fraction of mean_dt
  int min_targets_per_frame = 1;
  int max_targets_per_frame = 5;
  // Point accuracy of 0.2 m is dominated by the bearing component; range
  // measurements are much tighter. The split keeps the Doppler-over-
  // distance structure physically recoverable, as it is for real radar.
  double position_noise_sigma = 0.2;        // meters, cross-range (bearing)
  double range_noise_sigma = 0.05;          // meters, along the radial
  double doppler_noise_sigma = 0.1 / 3.6;   // m/s, sensor speed accuracy
  // Sensor behind the start point along the heading by default, which
  // reproduces the parallel-motion recording geometry: the radial Doppler
  // component is then essentially the full along-path velocity.
  bool sensor_on_path = true;
  double sensor_x = 0.0;
  double sensor_y = 0.0;
  double sensor_back_off_m = 20.0;  // used when sensor_on_path
};

struct SpeedBounds {
  double lo;
  double hi;
};

SpeedBounds speed_bounds(MotionClass c);

// Deterministic labeled target stream for one subject.
std::vector<RadarTarget> simulate(const SubjectSpec& spec, const SimConfig& cfg);

// The stride length the simulator walks with (walk/run classes).
double simulated_stride_length(const SubjectSpec& spec);

}  // namespace radargait

#endif  // RADARGAIT_GAIT_SIM_HPP

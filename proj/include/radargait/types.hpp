#ifndef RADARGAIT_TYPES_HPP
#define RADARGAIT_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace radargait {

// One reflection point reported by the sensor chain: time, planar position
// in an earth-fixed frame and ego-motion compensated radial Doppler
// velocity over ground. Polar records are converted at the ingestion
// boundary, never stored.
struct RadarTarget {
  double t = 0.0;  // seconds, monotonic epoch
  double x = 0.0;  // meters
  double y = 0.0;  // meters
  double v = 0.0;  // meters/second
  std::string track_id;
};

// Sanity bound on Doppler for pedestrian-class objects; rejects records
// that were never converted from raw sensor units.
inline constexpr double kMaxPedestrianDoppler = 15.0;

inline bool target_fields_valid(const RadarTarget& rt) {
  return std::isfinite(rt.t) && std::isfinite(rt.x) && std::isfinite(rt.y) &&
         std::isfinite(rt.v) && std::abs(rt.v) <= kMaxPedestrianDoppler;
}

enum class MotionClass : int {
  kWalk = 0,
  kRun = 1,
  kJump = 2,
  kCrutches = 3,
  kSkateboard = 4,
  kWheelchair = 5,
};

inline constexpr int kNumMotionClasses = 6;

const std::string& motion_class_name(MotionClass c);
std::optional<MotionClass> motion_class_from_name(const std::string& name);

// Ground truth attached to a window; either or both may be present.
struct WindowLabel {
  std::optional<double> height_m;
  std::optional<MotionClass> motion;
  std::string subject_id;
  std::string recording_id;
};

// All targets of one track inside a fixed time period, sorted by
// timestamp (ties broken by (x, y, v) lexicographic order). The unit of
// all downstream processing.
struct TargetWindow {
  std::vector<RadarTarget> targets;
  double duration = 3.0;  // seconds
  double start = 0.0;     // seconds, window covers [start, start + duration)
  WindowLabel label;

  std::size_t size() const { return targets.size(); }
};

}  // namespace radargait

#endif  // RADARGAIT_TYPES_HPP

#ifndef RADARGAIT_HEIGHT_HPP
#define RADARGAIT_HEIGHT_HPP

#include <array>
#include <stdexcept>
#include <string>

namespace radargait {

// Walking-model constants: thigh height is 0.53 * body height, and the
// relative stride length is 1.346 * sqrt(relative velocity).
inline constexpr double kThighHeightRatio = 0.53;
inline constexpr double kRelativeStrideCoeff = 1.346;

// Walking regime floor; below this the stride periodicity cannot be
// resolved inside a 3 s window.
inline constexpr double kMinWalkingSpeed = 0.2;

// Physical plausibility gate on emitted heights; estimates outside are
// flagged, never clamped, so downstream fusion can decide.
inline constexpr double kMinPlausibleHeight = 0.5;
inline constexpr double kMaxPlausibleHeight = 2.5;

enum class HeightSource { kModel, kForest };

struct HeightEstimate {
  double h = 0.0;  // meters
  HeightSource source = HeightSource::kModel;
  bool flagged = false;  // outside the plausibility gate
};

class OutOfRegime : public std::runtime_error {
 public:
  explicit OutOfRegime(const std::string& what) : std::runtime_error(what) {}
};

// Closed-form walking-model height: h = l^2 / (1.346^2 * 0.53 * v).
// Requires v > 0.2 m/s and l > 0.
HeightEstimate boulic_height(double v_ped, double stride_m);

// Inverse of the model: the stride length an average walker of height h
// produces at speed v. Used by the simulator and as a test oracle;
// boulic_height(v, model_stride_length(v, h)).h == h up to rounding.
double model_stride_length(double v_ped, double height_m);

// Regression feature vector in frozen order; serialized models reference
// features by index.
inline constexpr int kNumHeightFeatures = 8;

struct HeightFeatures {
  std::array<double, kNumHeightFeatures> values{};

  static const std::array<std::string, kNumHeightFeatures>& names();
};

// [v, l, v*l, v^2*l, v*l^2, l/v, l/v^2, l^2/v]
HeightFeatures height_features(double v_ped, double stride_m);

}  // namespace radargait

#endif  // RADARGAIT_HEIGHT_HPP

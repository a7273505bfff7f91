#include "radargait/height.hpp"

#include <cmath>

namespace radargait {

HeightEstimate boulic_height(double v_ped, double stride_m) {
  if (!(v_ped > kMinWalkingSpeed)) {
    throw OutOfRegime("boulic_height: speed below walking regime");
  }
  if (!(stride_m > 0.0)) {
    throw OutOfRegime("boulic_height: stride length must be positive");
  }
  HeightEstimate est;
  est.h = stride_m * stride_m /
          (kRelativeStrideCoeff * kRelativeStrideCoeff * kThighHeightRatio *
           v_ped);
  est.source = HeightSource::kModel;
  est.flagged = !(est.h > kMinPlausibleHeight && est.h < kMaxPlausibleHeight);
  return est;
}

double model_stride_length(double v_ped, double height_m) {
  // l = 1.346 * sqrt(v / h_t) * h_t = 1.346 * sqrt(v * 0.53 * h)
  return kRelativeStrideCoeff *
         std::sqrt(v_ped * kThighHeightRatio * height_m);
}

const std::array<std::string, kNumHeightFeatures>& HeightFeatures::names() {
  static const std::array<std::string, kNumHeightFeatures> kNames = {
      "v", "l", "v_l", "v2_l", "v_l2", "l_over_v", "l_over_v2", "l2_over_v"};
  return kNames;
}

HeightFeatures height_features(double v_ped, double stride_m) {
  if (!(v_ped > kMinWalkingSpeed) || !(stride_m > 0.0)) {
    throw OutOfRegime("height_features: outside walking regime");
  }
  const double v = v_ped;
  const double l = stride_m;
  HeightFeatures f;
  f.values = {v,         l,           v * l,         v * v * l,
              v * l * l, l / v,       l / (v * v),   l * l / v};
  for (double x : f.values) {
    if (!std::isfinite(x)) {
      throw OutOfRegime("height_features: non-finite feature value");
    }
  }
  return f;
}

}  // namespace radargait

#ifndef RADARGAIT_PIPELINE_HPP
#define RADARGAIT_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radargait/forest.hpp"
#include "radargait/gait_spectrum.hpp"
#include "radargait/height.hpp"
#include "radargait/motion_features.hpp"
#include "radargait/rng.hpp"
#include "radargait/sparse_dictionary.hpp"
#include "radargait/trajectory.hpp"
#include "radargait/windowing.hpp"

namespace radargait {

// Every preprocessing knob in one place; a snapshot of this struct is
// frozen into saved models so loading needs no external configuration.
struct PipelineConfig {
  double window_s = 3.0;
  double hop_s = 1.0;
  std::size_t min_targets = kMinTargetsPerWindow;
  RansacConfig ransac;
  ResampleConfig resample;
  std::size_t pad_to = 4096;
  StrideConfig stride;
  GridConfig grid;
  std::size_t hog_bins = kDefaultHogBins;
  DictionaryTrainConfig dictionary;
  // Raw per-class reconstruction errors as extra forest features; off by
  // default so the feature set matches the one-hot encoding exactly.
  bool include_dict_errors = false;
  // Height task only: windows whose stride peak fails the confidence gate
  // carry no usable stride and are skipped like degenerate trajectories.
  bool use_low_confidence_strides = false;
};

// Stride/speed features of one window, for height regression.
struct HeightExtraction {
  double v_ped = 0.0;
  double l_s = 0.0;
  HeightFeatures features;
  bool low_confidence = false;
};

// Classification inputs of one window: target statistics plus the grid
// descriptors. The dictionary one-hot block is model-dependent and is
// attached at train/predict time.
struct MotionExtraction {
  MomentFeatures moments;
  HogDescriptor hog;
  SpectralImage image;
};

// Both extractors return nullopt (with a reason) for windows the pipeline
// cannot use: degenerate trajectories, too-short spans, out-of-regime
// speeds. Deterministic given the seed.
std::optional<HeightExtraction> extract_height(const TargetWindow& w,
                                               const PipelineConfig& cfg,
                                               std::uint64_t seed,
                                               std::string* reason = nullptr);

std::optional<MotionExtraction> extract_motion(const TargetWindow& w,
                                               const PipelineConfig& cfg,
                                               std::uint64_t seed,
                                               std::string* reason = nullptr);

// Trained height regressor.
struct HeightModel {
  PipelineConfig config;
  ForestConfig forest_config;
  RandomForest forest;
};

HeightModel train_height_model(const std::vector<HeightExtraction>& samples,
                               const std::vector<double>& heights,
                               const PipelineConfig& cfg,
                               const ForestConfig& forest_cfg,
                               std::uint64_t seed);

double predict_height(const HeightModel& model, const HeightExtraction& x);

// Trained motion classifier: per-class dictionaries plus the forest over
// [moments, HOG, dictionary one-hot].
struct MotionModel {
  PipelineConfig config;
  ForestConfig forest_config;
  std::vector<ClassDictionary> dictionaries;
  RandomForest forest;
  std::vector<std::string> skipped_classes;  // too few training images
};

MotionModel train_motion_model(const std::vector<MotionExtraction>& samples,
                               const std::vector<MotionClass>& labels,
                               const PipelineConfig& cfg,
                               const ForestConfig& forest_cfg,
                               std::uint64_t seed);

MotionClass predict_motion(const MotionModel& model, const MotionExtraction& x);

// Feature vector assembly shared by training and prediction.
std::vector<double> motion_feature_vector(const MotionExtraction& x,
                                          const std::vector<ClassDictionary>& dicts,
                                          bool include_dict_errors);

std::vector<std::string> motion_feature_names(std::size_t hog_bins,
                                              bool include_dict_errors);

// Stable per-window RNG stream.
inline std::uint64_t window_seed(std::uint64_t base, std::size_t ordinal) {
  return derive_seed(base, 0x57494e00ULL + ordinal);
}

}  // namespace radargait

#endif  // RADARGAIT_PIPELINE_HPP

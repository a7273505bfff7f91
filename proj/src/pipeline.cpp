#include "radargait/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace radargait {

namespace {

// Shared front half of both extractors.
struct FrenetResult {
  LinearTrajectory traj;
  std::vector<FrenetTarget> targets;
};

std::optional<FrenetResult> to_frenet(const TargetWindow& w,
                                      const PipelineConfig& cfg,
                                      std::uint64_t seed, std::string* reason) {
  try {
    FrenetResult fr;
    fr.traj = fit_trajectory(w, cfg.ransac, seed);
    fr.targets = frenet_transform(w, fr.traj);
    return fr;
  } catch (const DegenerateTrajectory& e) {
    if (reason) *reason = e.what();
  } catch (const std::invalid_argument& e) {
    if (reason) *reason = e.what();
  }
  return std::nullopt;
}

}  // namespace

std::optional<HeightExtraction> extract_height(const TargetWindow& w,
                                               const PipelineConfig& cfg,
                                               std::uint64_t seed,
                                               std::string* reason) {
  auto fr = to_frenet(w, cfg, seed, reason);
  if (!fr) return std::nullopt;
  try {
    ResampledSignal rs = resample_gaussian(fr->targets, cfg.resample);
    // Analyze the deviation signal: the mean Doppler level carries no
    // stride information, and its window mainlobe is wide enough at short
    // spans to shoulder into the stride band.
    double mean = 0.0;
    for (double v : rs.values) mean += v;
    mean /= static_cast<double>(rs.values.size());
    for (double& v : rs.values) v -= mean;
    const Spectrum sp = spectrum(rs, cfg.pad_to);
    const StrideEstimate stride = extract_stride(sp, cfg.stride);
    if (stride.low_confidence && !cfg.use_low_confidence_strides) {
      if (reason) *reason = "stride peak below the confidence gate";
      return std::nullopt;
    }
    HeightExtraction out;
    out.v_ped = fr->traj.v_ped;
    out.l_s = stride.l_s;
    out.low_confidence = stride.low_confidence;
    out.features = height_features(out.v_ped, out.l_s);
    return out;
  } catch (const std::invalid_argument& e) {
    if (reason) *reason = e.what();
  } catch (const OutOfRegime& e) {
    if (reason) *reason = e.what();
  }
  return std::nullopt;
}

std::optional<MotionExtraction> extract_motion(const TargetWindow& w,
                                               const PipelineConfig& cfg,
                                               std::uint64_t seed,
                                               std::string* reason) {
  auto fr = to_frenet(w, cfg, seed, reason);
  if (!fr) return std::nullopt;
  try {
    MotionExtraction out;
    out.moments = moment_features(w);
    const DopplerGrid grid = grid_transform(fr->targets, fr->traj.v_ped, cfg.grid);
    out.hog = hog(grid, cfg.hog_bins);
    out.image = spectral_image(grid);
    return out;
  } catch (const std::invalid_argument& e) {
    if (reason) *reason = e.what();
  }
  return std::nullopt;
}

HeightModel train_height_model(const std::vector<HeightExtraction>& samples,
                               const std::vector<double>& heights,
                               const PipelineConfig& cfg,
                               const ForestConfig& forest_cfg,
                               std::uint64_t seed) {
  if (samples.size() != heights.size() || samples.size() < 2) {
    throw std::invalid_argument("train_height_model: bad training set");
  }
  std::vector<std::vector<double>> xs;
  xs.reserve(samples.size());
  for (const auto& s : samples) {
    xs.emplace_back(s.features.values.begin(), s.features.values.end());
  }
  HeightModel model;
  model.config = cfg;
  model.forest_config = forest_cfg;
  model.forest =
      fit_forest(xs, heights, ForestTask::kRegression, forest_cfg, seed);
  return model;
}

double predict_height(const HeightModel& model, const HeightExtraction& x) {
  return forest_predict(model.forest,
                        {x.features.values.begin(), x.features.values.end()});
}

std::vector<double> motion_feature_vector(const MotionExtraction& x,
                                          const std::vector<ClassDictionary>& dicts,
                                          bool include_dict_errors) {
  std::vector<double> f;
  f.reserve(4 + x.hog.bins.size() + kNumMotionClasses +
            (include_dict_errors ? kNumMotionClasses : 0));
  f.push_back(x.moments.mu2);
  f.push_back(x.moments.mu3);
  f.push_back(x.moments.mu4);
  f.push_back(x.moments.abs_mu1);
  f.insert(f.end(), x.hog.bins.begin(), x.hog.bins.end());

  std::vector<int> one_hot(kNumMotionClasses, 0);
  std::vector<double> errors(kNumMotionClasses, 0.0);
  if (!dicts.empty()) {
    const DictionaryPrediction pred = dictionary_predict(x.image, dicts);
    one_hot = pred.one_hot;
    for (std::size_t i = 0; i < dicts.size(); ++i) {
      errors[static_cast<std::size_t>(dicts[i].motion_class)] =
          pred.class_errors[i];
    }
  }
  for (int v : one_hot) f.push_back(static_cast<double>(v));
  if (include_dict_errors) {
    f.insert(f.end(), errors.begin(), errors.end());
  }
  return f;
}

std::vector<std::string> motion_feature_names(std::size_t hog_bins,
                                              bool include_dict_errors) {
  std::vector<std::string> names = {"mu2", "mu3", "mu4", "abs_mu1"};
  for (std::size_t b = 0; b < hog_bins; ++b) {
    names.push_back("hog_" + std::to_string(b));
  }
  for (int c = 0; c < kNumMotionClasses; ++c) {
    names.push_back("dict_" + motion_class_name(static_cast<MotionClass>(c)));
  }
  if (include_dict_errors) {
    for (int c = 0; c < kNumMotionClasses; ++c) {
      names.push_back("dict_err_" +
                      motion_class_name(static_cast<MotionClass>(c)));
    }
  }
  return names;
}

MotionModel train_motion_model(const std::vector<MotionExtraction>& samples,
                               const std::vector<MotionClass>& labels,
                               const PipelineConfig& cfg,
                               const ForestConfig& forest_cfg,
                               std::uint64_t seed) {
  if (samples.size() != labels.size() || samples.size() < 2) {
    throw std::invalid_argument("train_motion_model: bad training set");
  }

  MotionModel model;
  model.config = cfg;
  model.forest_config = forest_cfg;

  // One dictionary per class with enough images; the atom count shrinks
  // to the class size when a fold is short on samples.
  std::map<MotionClass, std::vector<SpectralImage>> by_class;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    by_class[labels[i]].push_back(samples[i].image);
  }
  for (const auto& [cls, images] : by_class) {
    if (images.size() < 2) {
      model.skipped_classes.push_back(motion_class_name(cls));
      continue;
    }
    DictionaryTrainConfig dict_cfg = cfg.dictionary;
    dict_cfg.atom_count = std::min<std::size_t>(dict_cfg.atom_count, images.size());
    model.dictionaries.push_back(
        train_dictionary(images, cls, dict_cfg,
                         derive_seed(seed, 0xd1c70000ULL +
                                               static_cast<std::uint64_t>(cls))));
  }

  std::vector<std::vector<double>> xs;
  std::vector<double> ys;
  xs.reserve(samples.size());
  ys.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    xs.push_back(motion_feature_vector(samples[i], model.dictionaries,
                                       cfg.include_dict_errors));
    ys.push_back(static_cast<double>(labels[i]));
  }
  // Fixed class-code range so the forest can express every class.
  RandomForest forest = fit_forest(xs, ys, ForestTask::kClassification,
                                   forest_cfg, derive_seed(seed, 0xf05e57ULL));
  if (forest.n_classes < kNumMotionClasses) forest.n_classes = kNumMotionClasses;
  for (auto& tree : forest.trees) {
    for (auto& node : tree.nodes) {
      if (node.is_leaf()) node.class_dist.resize(kNumMotionClasses, 0.0);
    }
  }
  model.forest = std::move(forest);
  return model;
}

MotionClass predict_motion(const MotionModel& model, const MotionExtraction& x) {
  const std::vector<double> f = motion_feature_vector(
      x, model.dictionaries, model.config.include_dict_errors);
  return static_cast<MotionClass>(
      static_cast<int>(forest_predict(model.forest, f)));
}

}  // namespace radargait

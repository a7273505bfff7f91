#ifndef RADARGAIT_FOREST_HPP
#define RADARGAIT_FOREST_HPP

#include <cstdint>
#include <vector>

namespace radargait {

enum class ForestTask { kRegression, kClassification };

// Flat binary tree. Internal nodes split on feature <= threshold; leaves
// carry either a mean value (regression) or a normalized class
// distribution (classification).
struct TreeNode {
  int feature = -1;        // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;              // regression leaf mean
  std::vector<double> class_dist;  // classification leaf distribution

  bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

struct ForestConfig {
  std::size_t tree_count = 100;
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_samples_split = 2;
  // Candidate features per node: sqrt(n) for classification, ceil(n/3)
  // for regression; 0 picks the task default.
  std::size_t max_features = 0;
};

inline ForestConfig regression_forest_defaults() {
  return ForestConfig{100, 5, 2, 0};
}

inline ForestConfig classification_forest_defaults() {
  return ForestConfig{50, 0, 2, 0};
}

struct RandomForest {
  ForestTask task = ForestTask::kRegression;
  std::size_t n_features = 0;
  std::size_t n_classes = 0;  // classification only
  std::vector<DecisionTree> trees;
  std::vector<double> feature_importances;  // sums to 1, or all zero
  std::uint64_t seed = 0;
};

// Trains one tree per bootstrap sample. Splits maximize Gini or MSE
// decrease over thresholds at midpoints of consecutive distinct sorted
// values; growth stops at max_depth, purity or min_samples_split.
// Importances are the normalized total impurity decrease per feature.
RandomForest fit_forest(const std::vector<std::vector<double>>& features,
                        const std::vector<double>& targets, ForestTask task,
                        const ForestConfig& cfg, std::uint64_t seed);

// Regression: mean of tree outputs. Classification: argmax of the summed
// leaf distributions, ties to the lowest class code (the returned double
// is the integer class code).
double forest_predict(const RandomForest& forest, const std::vector<double>& x);

// Summed per-class leaf distributions, normalized over trees.
std::vector<double> forest_predict_distribution(const RandomForest& forest,
                                                const std::vector<double>& x);

}  // namespace radargait

#endif  // RADARGAIT_FOREST_HPP

#ifndef RADARGAIT_EVAL_HPP
#define RADARGAIT_EVAL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace radargait {

// Subject-to-fold assignment. Grouping by subject keeps any one person
// out of both sides of a train/test split.
struct FoldPlan {
  std::map<std::string, std::size_t> assignments;
  std::size_t k = 0;

  std::size_t fold_of(const std::string& subject) const {
    return assignments.at(subject);
  }
};

// Seeded shuffle plus round-robin assignment; fold sizes differ by at
// most one subject.
FoldPlan grouped_kfold(const std::vector<std::string>& subjects, std::size_t k,
                       std::uint64_t seed);

// Grouping keys for fold assignment: the subject id, except for classes
// carried by a single subject, which are split by recording instead (the
// only way to cross-validate such a class at all).
std::vector<std::string> fold_group_keys(
    const std::vector<int>& labels, const std::vector<std::string>& subjects,
    const std::vector<std::string>& recordings);

struct ClassificationReport {
  std::size_t n_classes = 0;
  std::vector<std::size_t> confusion;      // n x n counts, row = true class
  std::vector<double> row_normalized;      // rows sum to 1 (or all zero)
  std::vector<double> per_class_precision;
  std::vector<double> per_class_recall;
  std::vector<double> per_class_f1;
  double macro_f1 = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  // Classes absent from the entire dataset are excluded from the macro
  // averages; classes present but never predicted stay in with F1 = 0.
  std::vector<bool> class_present;

  std::size_t count(std::size_t truth, std::size_t pred) const {
    return confusion[truth * n_classes + pred];
  }
};

// Metrics from a raw confusion matrix with the 0/0 -> 0 convention.
ClassificationReport classification_report_from_confusion(
    const std::vector<std::size_t>& confusion, std::size_t n_classes);

struct RegressionBin {
  double center = 0.0;  // meters
  double mae = 0.0;
  double std_dev = 0.0;  // of the absolute errors in the bin
  std::size_t count = 0;
};

struct RegressionReport {
  double mae = 0.0;          // meters
  double std_abs_err = 0.0;  // meters
  std::vector<RegressionBin> binned;  // 5 cm bins over true height
  std::size_t sample_count = 0;
};

inline constexpr double kHeightBinWidth = 0.05;

RegressionReport regression_report(const std::vector<double>& truth,
                                   const std::vector<double>& predictions);

// Per-fold train-and-predict hook: receives sample indices for the train
// and test sides plus the fold number, returns one prediction per test
// index (in order).
using FoldPredictFn = std::function<std::vector<double>(
    const std::vector<std::size_t>& train_idx,
    const std::vector<std::size_t>& test_idx, std::size_t fold)>;

// Runs the full cross-validation: per fold the hook trains on the train
// side only and predicts the test side; predictions are aggregated into
// one confusion matrix. Fold membership is asserted disjoint by subject.
ClassificationReport evaluate_classification(
    const std::vector<std::string>& groups, const std::vector<int>& labels,
    std::size_t n_classes, const FoldPlan& plan, const FoldPredictFn& predict);

RegressionReport evaluate_regression(const std::vector<std::string>& groups,
                                     const std::vector<double>& truth,
                                     const FoldPlan& plan,
                                     const FoldPredictFn& predict);

// Report emission.
std::string classification_report_json(const ClassificationReport& report,
                                       const std::vector<std::string>& class_names);
std::string classification_report_text(const ClassificationReport& report,
                                       const std::vector<std::string>& class_names);
std::string confusion_csv(const ClassificationReport& report,
                          const std::vector<std::string>& class_names);
std::string confusion_svg(const ClassificationReport& report,
                          const std::vector<std::string>& class_names);
std::string regression_report_json(const RegressionReport& report);
std::string regression_report_text(const RegressionReport& report);
std::string binned_mae_csv(const RegressionReport& report);
std::string binned_mae_svg(const RegressionReport& report);

}  // namespace radargait

#endif  // RADARGAIT_EVAL_HPP

#include "radargait/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "radargait/rng.hpp"

namespace radargait {

FoldPlan grouped_kfold(const std::vector<std::string>& subjects, std::size_t k,
                       std::uint64_t seed) {
  std::vector<std::string> unique(subjects);
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (k == 0 || unique.size() < k) {
    throw std::invalid_argument("grouped_kfold: need at least k subjects");
  }

  Rng rng(seed);
  for (std::size_t i = unique.size() - 1; i > 0; --i) {
    std::swap(unique[i], unique[rng.uniform_index(i + 1)]);
  }

  FoldPlan plan;
  plan.k = k;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    plan.assignments[unique[i]] = i % k;
  }
  return plan;
}

std::vector<std::string> fold_group_keys(
    const std::vector<int>& labels, const std::vector<std::string>& subjects,
    const std::vector<std::string>& recordings) {
  if (labels.size() != subjects.size() || labels.size() != recordings.size()) {
    throw std::invalid_argument("fold_group_keys: size mismatch");
  }
  std::map<int, std::set<std::string>> subjects_per_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    subjects_per_class[labels[i]].insert(subjects[i]);
  }
  std::vector<std::string> keys;
  keys.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (subjects_per_class[labels[i]].size() < 2) {
      keys.push_back(subjects[i] + "/" + recordings[i]);
    } else {
      keys.push_back(subjects[i]);
    }
  }
  return keys;
}

ClassificationReport classification_report_from_confusion(
    const std::vector<std::size_t>& confusion, std::size_t n_classes) {
  if (confusion.size() != n_classes * n_classes) {
    throw std::invalid_argument("classification_report: matrix size mismatch");
  }
  ClassificationReport rep;
  rep.n_classes = n_classes;
  rep.confusion = confusion;
  rep.row_normalized.assign(n_classes * n_classes, 0.0);
  rep.per_class_precision.assign(n_classes, 0.0);
  rep.per_class_recall.assign(n_classes, 0.0);
  rep.per_class_f1.assign(n_classes, 0.0);
  rep.class_present.assign(n_classes, false);

  for (std::size_t c = 0; c < n_classes; ++c) {
    std::size_t tp = confusion[c * n_classes + c];
    std::size_t row_total = 0, col_total = 0;
    for (std::size_t j = 0; j < n_classes; ++j) {
      row_total += confusion[c * n_classes + j];
      col_total += confusion[j * n_classes + c];
    }
    rep.class_present[c] = row_total > 0 || col_total > 0;
    if (row_total > 0) {
      for (std::size_t j = 0; j < n_classes; ++j) {
        rep.row_normalized[c * n_classes + j] =
            static_cast<double>(confusion[c * n_classes + j]) /
            static_cast<double>(row_total);
      }
    }
    // 0/0 -> 0 convention throughout.
    rep.per_class_precision[c] =
        col_total > 0 ? static_cast<double>(tp) / static_cast<double>(col_total)
                      : 0.0;
    rep.per_class_recall[c] =
        row_total > 0 ? static_cast<double>(tp) / static_cast<double>(row_total)
                      : 0.0;
    const double pr = rep.per_class_precision[c] + rep.per_class_recall[c];
    rep.per_class_f1[c] =
        pr > 0.0 ? 2.0 * rep.per_class_precision[c] * rep.per_class_recall[c] / pr
                 : 0.0;
  }

  std::size_t present = 0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (!rep.class_present[c]) continue;
    ++present;
    rep.macro_f1 += rep.per_class_f1[c];
    rep.macro_precision += rep.per_class_precision[c];
    rep.macro_recall += rep.per_class_recall[c];
  }
  if (present > 0) {
    rep.macro_f1 /= static_cast<double>(present);
    rep.macro_precision /= static_cast<double>(present);
    rep.macro_recall /= static_cast<double>(present);
  }
  return rep;
}

RegressionReport regression_report(const std::vector<double>& truth,
                                   const std::vector<double>& predictions) {
  if (truth.size() != predictions.size() || truth.empty()) {
    throw std::invalid_argument("regression_report: size mismatch or empty");
  }
  RegressionReport rep;
  rep.sample_count = truth.size();

  std::vector<double> abs_err(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    abs_err[i] = std::abs(predictions[i] - truth[i]);
    rep.mae += abs_err[i];
  }
  rep.mae /= static_cast<double>(truth.size());
  double var = 0.0;
  for (double e : abs_err) var += (e - rep.mae) * (e - rep.mae);
  rep.std_abs_err = std::sqrt(var / static_cast<double>(truth.size()));

  // 5 cm bins over the true height.
  std::map<long, std::vector<double>> bins;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    bins[static_cast<long>(std::floor(truth[i] / kHeightBinWidth))].push_back(
        abs_err[i]);
  }
  for (const auto& [bin, errs] : bins) {
    RegressionBin rb;
    rb.center = (static_cast<double>(bin) + 0.5) * kHeightBinWidth;
    rb.count = errs.size();
    for (double e : errs) rb.mae += e;
    rb.mae /= static_cast<double>(errs.size());
    double v = 0.0;
    for (double e : errs) v += (e - rb.mae) * (e - rb.mae);
    rb.std_dev = std::sqrt(v / static_cast<double>(errs.size()));
    rep.binned.push_back(rb);
  }
  return rep;
}

namespace {

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

std::vector<FoldSplit> make_splits(const std::vector<std::string>& groups,
                                   const FoldPlan& plan) {
  std::vector<FoldSplit> splits(plan.k);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::size_t fold = plan.fold_of(groups[i]);
    for (std::size_t f = 0; f < plan.k; ++f) {
      if (f == fold) {
        splits[f].test.push_back(i);
      } else {
        splits[f].train.push_back(i);
      }
    }
  }
  // Leakage guard: no subject may appear on both sides of any fold.
  for (const auto& split : splits) {
    std::set<std::string> train_subjects;
    for (std::size_t i : split.train) train_subjects.insert(groups[i]);
    for (std::size_t i : split.test) {
      if (train_subjects.count(groups[i])) {
        throw std::logic_error("evaluate: subject leaked across the fold split");
      }
    }
  }
  return splits;
}

}  // namespace

ClassificationReport evaluate_classification(
    const std::vector<std::string>& groups, const std::vector<int>& labels,
    std::size_t n_classes, const FoldPlan& plan, const FoldPredictFn& predict) {
  if (groups.size() != labels.size() || groups.empty()) {
    throw std::invalid_argument("evaluate_classification: bad inputs");
  }
  std::vector<std::size_t> confusion(n_classes * n_classes, 0);
  const auto splits = make_splits(groups, plan);
  for (std::size_t f = 0; f < plan.k; ++f) {
    const auto& split = splits[f];
    if (split.test.empty()) continue;
    const std::vector<double> preds = predict(split.train, split.test, f);
    if (preds.size() != split.test.size()) {
      throw std::logic_error("evaluate_classification: prediction count mismatch");
    }
    for (std::size_t i = 0; i < split.test.size(); ++i) {
      const auto truth = static_cast<std::size_t>(labels[split.test[i]]);
      const auto pred = static_cast<std::size_t>(preds[i]);
      if (truth >= n_classes || pred >= n_classes) {
        throw std::logic_error("evaluate_classification: label out of range");
      }
      ++confusion[truth * n_classes + pred];
    }
  }
  return classification_report_from_confusion(confusion, n_classes);
}

RegressionReport evaluate_regression(const std::vector<std::string>& groups,
                                     const std::vector<double>& truth,
                                     const FoldPlan& plan,
                                     const FoldPredictFn& predict) {
  if (groups.size() != truth.size() || groups.empty()) {
    throw std::invalid_argument("evaluate_regression: bad inputs");
  }
  std::vector<double> all_truth, all_pred;
  all_truth.reserve(groups.size());
  all_pred.reserve(groups.size());
  const auto splits = make_splits(groups, plan);
  for (std::size_t f = 0; f < plan.k; ++f) {
    const auto& split = splits[f];
    if (split.test.empty()) continue;
    const std::vector<double> preds = predict(split.train, split.test, f);
    if (preds.size() != split.test.size()) {
      throw std::logic_error("evaluate_regression: prediction count mismatch");
    }
    for (std::size_t i = 0; i < split.test.size(); ++i) {
      all_truth.push_back(truth[split.test[i]]);
      all_pred.push_back(preds[i]);
    }
  }
  return regression_report(all_truth, all_pred);
}

}  // namespace radargait

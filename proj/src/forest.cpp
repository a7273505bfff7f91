#include "radargait/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "radargait/rng.hpp"

namespace radargait {

namespace {

struct TrainContext {
  const std::vector<std::vector<double>>* features;
  const std::vector<double>* targets;
  ForestTask task;
  std::size_t n_classes;
  std::size_t max_depth;
  std::size_t min_samples_split;
  std::size_t candidate_features;
  double total_samples;
  std::vector<double>* importance_acc;
};

double gini_impurity(const std::vector<double>& counts, double total) {
  double sum_sq = 0.0;
  for (double c : counts) sum_sq += c * c;
  return 1.0 - sum_sq / (total * total);
}

// Mean squared error around the node mean, expressed through sums so the
// left/right scan stays O(1) per threshold.
double mse_impurity(double sum, double sum_sq, double n) {
  const double mean = sum / n;
  return sum_sq / n - mean * mean;
}

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double decrease = 0.0;  // impurity decrease, node-weighted
};

// Scans one feature for the best midpoint threshold. `order` indexes into
// `idx` sorted by the feature value.
SplitChoice best_split_for_feature(const TrainContext& ctx,
                                   const std::vector<std::size_t>& idx,
                                   std::size_t feature,
                                   double node_impurity) {
  const auto& xs = *ctx.features;
  const auto& ys = *ctx.targets;
  const std::size_t n = idx.size();

  std::vector<std::size_t> order(idx);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return xs[a][feature] < xs[b][feature];
  });

  SplitChoice best;
  const double nd = static_cast<double>(n);

  if (ctx.task == ForestTask::kClassification) {
    std::vector<double> left_counts(ctx.n_classes, 0.0);
    std::vector<double> right_counts(ctx.n_classes, 0.0);
    for (std::size_t i : order) {
      right_counts[static_cast<std::size_t>(ys[i])] += 1.0;
    }
    for (std::size_t split = 1; split < n; ++split) {
      const std::size_t moved = order[split - 1];
      const auto cls = static_cast<std::size_t>(ys[moved]);
      left_counts[cls] += 1.0;
      right_counts[cls] -= 1.0;
      const double lo = xs[moved][feature];
      const double hi = xs[order[split]][feature];
      if (lo == hi) continue;  // thresholds only between distinct values
      const double nl = static_cast<double>(split);
      const double nr = nd - nl;
      const double child =
          (nl / nd) * gini_impurity(left_counts, nl) +
          (nr / nd) * gini_impurity(right_counts, nr);
      const double decrease = node_impurity - child;
      if (decrease > best.decrease) {
        best.feature = static_cast<int>(feature);
        best.threshold = lo + 0.5 * (hi - lo);
        best.decrease = decrease;
      }
    }
  } else {
    double left_sum = 0.0, left_sq = 0.0;
    double right_sum = 0.0, right_sq = 0.0;
    for (std::size_t i : order) {
      right_sum += ys[i];
      right_sq += ys[i] * ys[i];
    }
    for (std::size_t split = 1; split < n; ++split) {
      const std::size_t moved = order[split - 1];
      left_sum += ys[moved];
      left_sq += ys[moved] * ys[moved];
      right_sum -= ys[moved];
      right_sq -= ys[moved] * ys[moved];
      const double lo = xs[moved][feature];
      const double hi = xs[order[split]][feature];
      if (lo == hi) continue;
      const double nl = static_cast<double>(split);
      const double nr = nd - nl;
      const double child = (nl / nd) * mse_impurity(left_sum, left_sq, nl) +
                           (nr / nd) * mse_impurity(right_sum, right_sq, nr);
      const double decrease = node_impurity - child;
      if (decrease > best.decrease) {
        best.feature = static_cast<int>(feature);
        best.threshold = lo + 0.5 * (hi - lo);
        best.decrease = decrease;
      }
    }
  }
  return best;
}

int build_node(DecisionTree& tree, const TrainContext& ctx,
               std::vector<std::size_t>& idx, std::size_t depth, Rng& rng) {
  const auto& xs = *ctx.features;
  const auto& ys = *ctx.targets;
  const std::size_t n = idx.size();
  const double nd = static_cast<double>(n);

  double node_impurity;
  std::vector<double> counts;
  if (ctx.task == ForestTask::kClassification) {
    counts.assign(ctx.n_classes, 0.0);
    for (std::size_t i : idx) counts[static_cast<std::size_t>(ys[i])] += 1.0;
    node_impurity = gini_impurity(counts, nd);
  } else {
    double sum = 0.0, sq = 0.0;
    for (std::size_t i : idx) {
      sum += ys[i];
      sq += ys[i] * ys[i];
    }
    node_impurity = mse_impurity(sum, sq, nd);
  }

  const bool depth_capped = ctx.max_depth > 0 && depth >= ctx.max_depth;
  SplitChoice best;
  if (!depth_capped && n >= ctx.min_samples_split && node_impurity > 0.0) {
    // Candidate features drawn without replacement.
    std::vector<std::size_t> pool(xs.front().size());
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < ctx.candidate_features; ++i) {
      const std::size_t j = i + rng.uniform_index(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    for (std::size_t i = 0; i < ctx.candidate_features; ++i) {
      const SplitChoice cand =
          best_split_for_feature(ctx, idx, pool[i], node_impurity);
      if (cand.decrease > best.decrease) best = cand;
    }
  }

  const int node_index = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (best.feature < 0) {
    TreeNode& leaf = tree.nodes[static_cast<std::size_t>(node_index)];
    if (ctx.task == ForestTask::kClassification) {
      leaf.class_dist = counts;
      for (double& c : leaf.class_dist) c /= nd;
    } else {
      double sum = 0.0;
      for (std::size_t i : idx) sum += ys[i];
      leaf.value = sum / nd;
    }
    return node_index;
  }

  (*ctx.importance_acc)[static_cast<std::size_t>(best.feature)] +=
      best.decrease * (nd / ctx.total_samples);

  std::vector<std::size_t> left_idx, right_idx;
  left_idx.reserve(n);
  right_idx.reserve(n);
  for (std::size_t i : idx) {
    if (xs[i][static_cast<std::size_t>(best.feature)] <= best.threshold) {
      left_idx.push_back(i);
    } else {
      right_idx.push_back(i);
    }
  }
  idx.clear();
  idx.shrink_to_fit();

  const int left = build_node(tree, ctx, left_idx, depth + 1, rng);
  const int right = build_node(tree, ctx, right_idx, depth + 1, rng);
  TreeNode& node = tree.nodes[static_cast<std::size_t>(node_index)];
  node.feature = best.feature;
  node.threshold = best.threshold;
  node.left = left;
  node.right = right;
  return node_index;
}

const TreeNode& descend(const DecisionTree& tree, const std::vector<double>& x) {
  const TreeNode* node = &tree.nodes.front();
  while (!node->is_leaf()) {
    const int next = x[static_cast<std::size_t>(node->feature)] <= node->threshold
                         ? node->left
                         : node->right;
    node = &tree.nodes[static_cast<std::size_t>(next)];
  }
  return *node;
}

}  // namespace

RandomForest fit_forest(const std::vector<std::vector<double>>& features,
                        const std::vector<double>& targets, ForestTask task,
                        const ForestConfig& cfg, std::uint64_t seed) {
  if (features.size() < 2 || features.size() != targets.size()) {
    throw std::invalid_argument("fit_forest: need >= 2 consistent samples");
  }
  const std::size_t n_features = features.front().size();
  for (const auto& f : features) {
    if (f.size() != n_features) {
      throw std::invalid_argument("fit_forest: inconsistent feature dimension");
    }
  }
  if (cfg.tree_count == 0) {
    throw std::invalid_argument("fit_forest: need at least one tree");
  }

  RandomForest forest;
  forest.task = task;
  forest.n_features = n_features;
  forest.seed = seed;
  if (task == ForestTask::kClassification) {
    double max_code = 0.0;
    for (double y : targets) {
      if (y < 0.0 || y != std::floor(y)) {
        throw std::invalid_argument("fit_forest: class codes must be whole and >= 0");
      }
      max_code = std::max(max_code, y);
    }
    forest.n_classes = static_cast<std::size_t>(max_code) + 1;
  }

  std::size_t candidates = cfg.max_features;
  if (candidates == 0) {
    if (task == ForestTask::kClassification) {
      candidates = static_cast<std::size_t>(
          std::sqrt(static_cast<double>(n_features)));
    } else {
      candidates = (n_features + 2) / 3;  // n/3 rounded up
    }
  }
  candidates = std::clamp<std::size_t>(candidates, 1, n_features);

  forest.feature_importances.assign(n_features, 0.0);
  TrainContext ctx;
  ctx.features = &features;
  ctx.targets = &targets;
  ctx.task = task;
  ctx.n_classes = forest.n_classes;
  ctx.max_depth = cfg.max_depth;
  ctx.min_samples_split = std::max<std::size_t>(cfg.min_samples_split, 2);
  ctx.candidate_features = candidates;
  ctx.total_samples = static_cast<double>(features.size());
  ctx.importance_acc = &forest.feature_importances;

  const std::size_t n = features.size();
  forest.trees.resize(cfg.tree_count);
  for (std::size_t t = 0; t < cfg.tree_count; ++t) {
    // Per-tree stream so training order can never change results.
    Rng rng(derive_seed(seed, t));
    std::vector<std::size_t> bootstrap(n);
    for (std::size_t i = 0; i < n; ++i) {
      bootstrap[i] = rng.uniform_index(n);
    }
    build_node(forest.trees[t], ctx, bootstrap, 0, rng);
  }

  double importance_total = 0.0;
  for (double v : forest.feature_importances) importance_total += v;
  if (importance_total > 0.0) {
    for (double& v : forest.feature_importances) v /= importance_total;
  }
  return forest;
}

std::vector<double> forest_predict_distribution(const RandomForest& forest,
                                                const std::vector<double>& x) {
  if (forest.task != ForestTask::kClassification) {
    throw std::invalid_argument("forest_predict_distribution: not a classifier");
  }
  if (x.size() != forest.n_features) {
    throw std::invalid_argument("forest_predict_distribution: dimension mismatch");
  }
  std::vector<double> dist(forest.n_classes, 0.0);
  for (const auto& tree : forest.trees) {
    const TreeNode& leaf = descend(tree, x);
    for (std::size_t c = 0; c < forest.n_classes; ++c) {
      dist[c] += leaf.class_dist[c];
    }
  }
  const double inv = 1.0 / static_cast<double>(forest.trees.size());
  for (double& d : dist) d *= inv;
  return dist;
}

double forest_predict(const RandomForest& forest, const std::vector<double>& x) {
  if (x.size() != forest.n_features) {
    throw std::invalid_argument("forest_predict: dimension mismatch");
  }
  if (forest.task == ForestTask::kRegression) {
    double sum = 0.0;
    for (const auto& tree : forest.trees) sum += descend(tree, x).value;
    return sum / static_cast<double>(forest.trees.size());
  }
  const std::vector<double> dist = forest_predict_distribution(forest, x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < dist.size(); ++c) {
    if (dist[c] > dist[best]) best = c;  // ties keep the lowest code
  }
  return static_cast<double>(best);
}

}  // namespace radargait

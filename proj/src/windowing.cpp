#include "radargait/windowing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace radargait {

namespace {

const std::string kClassNames[kNumMotionClasses] = {
    "walk", "run", "jump", "crutches", "skateboard", "wheelchair"};

bool target_order(const RadarTarget& a, const RadarTarget& b) {
  return std::tie(a.t, a.x, a.y, a.v) < std::tie(b.t, b.x, b.y, b.v);
}

}  // namespace

const std::string& motion_class_name(MotionClass c) {
  return kClassNames[static_cast<int>(c)];
}

std::optional<MotionClass> motion_class_from_name(const std::string& name) {
  for (int i = 0; i < kNumMotionClasses; ++i) {
    if (kClassNames[i] == name) return static_cast<MotionClass>(i);
  }
  return std::nullopt;
}

WindowingResult assemble_windows(const std::vector<RadarTarget>& targets,
                                 double window_s, double hop_s,
                                 std::size_t min_targets) {
  if (!(window_s > 0.0) || !(hop_s > 0.0) || hop_s > window_s) {
    throw std::invalid_argument("assemble_windows: need 0 < hop <= window");
  }

  WindowingResult result;
  std::vector<RadarTarget> clean;
  clean.reserve(targets.size());
  for (const auto& rt : targets) {
    if (!target_fields_valid(rt)) {
      ++result.rejected_records;
      continue;
    }
    if (!targets.empty() && rt.track_id != targets.front().track_id) {
      throw std::invalid_argument(
          "assemble_windows: stream mixes track ids; group by track first");
    }
    clean.push_back(rt);
  }
  if (clean.empty()) return result;

  std::sort(clean.begin(), clean.end(), target_order);

  const double t0 = clean.front().t;
  const double span = clean.back().t - t0;
  // Hop grid anchored at the first timestamp. A track shorter than one
  // window is still covered by its first window.
  std::size_t hops = 0;
  if (span >= window_s) {
    hops = static_cast<std::size_t>(
        std::floor((span - window_s) / hop_s + 1e-9));
  }

  std::size_t lo = 0;
  for (std::size_t k = 0; k <= hops; ++k) {
    const double start = t0 + static_cast<double>(k) * hop_s;
    const double end = start + window_s;
    while (lo < clean.size() && clean[lo].t < start) ++lo;
    std::size_t hi = lo;
    while (hi < clean.size() && clean[hi].t < end) ++hi;
    const std::size_t count = hi - lo;
    if (count < min_targets) {
      ++result.dropped_windows;
      continue;
    }
    TargetWindow w;
    w.targets.assign(clean.begin() + static_cast<std::ptrdiff_t>(lo),
                     clean.begin() + static_cast<std::ptrdiff_t>(hi));
    w.duration = window_s;
    w.start = start;
    result.windows.push_back(std::move(w));
  }
  return result;
}

SampleTimeStats sample_time_stats(const TargetWindow& w) {
  const std::size_t n = w.targets.size();
  if (n < 2) {
    throw std::invalid_argument("sample_time_stats: need at least 2 targets");
  }
  SampleTimeStats stats;
  stats.mean_dt =
      (w.targets.back().t - w.targets.front().t) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    stats.max_dt = std::max(stats.max_dt, w.targets[i].t - w.targets[i - 1].t);
  }
  return stats;
}

}  // namespace radargait

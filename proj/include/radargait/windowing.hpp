#ifndef RADARGAIT_WINDOWING_HPP
#define RADARGAIT_WINDOWING_HPP

#include <cstddef>
#include <vector>

#include "radargait/types.hpp"

namespace radargait {

// Minimum target count per window. Below this the FFT-based stride
// extraction has no meaningful support: 3 s at the nominal 18 ms sample
// time yields ~167 targets, so 32 tolerates heavy dropout.
inline constexpr std::size_t kMinTargetsPerWindow = 32;

struct WindowingResult {
  std::vector<TargetWindow> windows;
  std::size_t dropped_windows = 0;    // windows with fewer than N_min targets
  std::size_t rejected_records = 0;   // non-finite or out-of-bound fields
};

// Cuts one track's target stream into overlapping windows of length
// window_s on a hop grid anchored at the track's first timestamp. Targets
// must all share a track_id; the stream need not be sorted. A stream
// shorter than one window still yields its single covering window.
WindowingResult assemble_windows(const std::vector<RadarTarget>& targets,
                                 double window_s, double hop_s,
                                 std::size_t min_targets = kMinTargetsPerWindow);

struct SampleTimeStats {
  double mean_dt = 0.0;  // (t_max - t_min) / (N - 1)
  double max_dt = 0.0;   // largest consecutive gap
};

// Diagnostic for the nominal 18 ms spacing. Requires N >= 2.
SampleTimeStats sample_time_stats(const TargetWindow& w);

}  // namespace radargait

#endif  // RADARGAIT_WINDOWING_HPP

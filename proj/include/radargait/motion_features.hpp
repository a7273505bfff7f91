#ifndef RADARGAIT_MOTION_FEATURES_HPP
#define RADARGAIT_MOTION_FEATURES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "radargait/trajectory.hpp"
#include "radargait/types.hpp"

namespace radargait {

// Central moments of the raw Doppler values, 1/(N-1) normalized. The mean
// itself is excluded: it depends on the aspect angle between path and
// sensor, not on the motion type.
struct MomentFeatures {
  double mu2 = 0.0;      // (m/s)^2
  double mu3 = 0.0;      // (m/s)^3
  double mu4 = 0.0;      // (m/s)^4
  double abs_mu1 = 0.0;  // m/s, first central absolute moment
};

MomentFeatures moment_features(const TargetWindow& w);

// Raster of Doppler deviation from the pedestrian speed in Frenet
// coordinates, normalized to [-1, 1] with zero preserved. Rows index the
// orthogonal offset n, columns the tangential distance d. Unoccupied
// cells are exactly 0.
struct DopplerGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cells;     // row-major, rows * cols
  std::vector<bool> occupancy;   // same layout
  double cell_d = 0.1;           // meters per column
  double cell_n = 0.1;           // meters per row
  double d_min = 0.0;            // meters, left edge of column 0

  double at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
};

struct GridConfig {
  std::size_t rows = 16;   // orthogonal bins; raster spans rows*cell_n centered on n=0
  std::size_t cols = 64;   // tangential bins anchored at min d
  double cell_d = 0.1;     // meters
  double cell_n = 0.1;     // meters
  double smooth_sigma = 0.05;  // meters, anti-aliasing bandwidth
  double w_min = 1e-6;         // occupancy threshold on total kernel weight
};

// Deviation signal v_i - v_ped smoothed onto the fixed raster with a 2D
// Gaussian kernel (same weighted-mean form as the stride resampler), then
// normalized by the largest cell magnitude. Targets outside the raster
// extent are cropped; sparse coverage leaves cells unoccupied.
DopplerGrid grid_transform(const std::vector<FrenetTarget>& targets,
                           double v_ped, const GridConfig& cfg);

// Writes the grid as a portable graymap with [-1, 1] mapped to [0, 255];
// a visual debugging aid.
std::string grid_to_pgm(const DopplerGrid& grid);

// Orientation histogram, normalized to sum one (uniform when the grid has
// no gradient at all).
struct HogDescriptor {
  std::vector<double> bins;
};

inline constexpr std::size_t kDefaultHogBins = 9;

// Unsigned-orientation HOG over the whole grid: per-cell [-1, 0, 1]
// central differences with replicated borders, magnitude votes split
// bilinearly between the two nearest bin centers (circular mod 180 deg),
// single global histogram. Grid must be at least 3x3.
HogDescriptor hog(const DopplerGrid& grid, std::size_t bins = kDefaultHogBins);

}  // namespace radargait

#endif  // RADARGAIT_MOTION_FEATURES_HPP

#ifndef RADARGAIT_GAIT_SPECTRUM_HPP
#define RADARGAIT_GAIT_SPECTRUM_HPP

#include <cstddef>
#include <vector>

#include "radargait/trajectory.hpp"

namespace radargait {

// Doppler velocity resampled onto a uniform tangential-distance grid.
struct ResampledSignal {
  double d0 = 0.0;       // meters, start abscissa
  double delta_d = 0.1;  // meters, sample spacing
  std::vector<double> values;  // meters/second
  std::size_t hole_count = 0;  // grid points filled by interpolation
};

struct ResampleConfig {
  double delta_d = 0.1;  // meters
  // Kernel bandwidth. Wide enough to pool a usable sample count per grid
  // point at nominal target density; in-band attenuation stays under 10%
  // for typical step frequencies. Too high a value starts eating into the
  // upper stride band.
  double sigma = 0.05;   // meters
};

// Kernel-weighted mean of the scattered Doppler samples at every grid
// point covering [min d, max d]. The kernel support is truncated at
// 6 sigma (weight ratio below 1e-7). Grid points with total weight under
// 1e-12 sit in coverage holes wider than the kernel support and are filled
// by linear interpolation between the nearest valid neighbors.
ResampledSignal resample_gaussian(const std::vector<FrenetTarget>& targets,
                                  const ResampleConfig& cfg);

// Spatial-frequency spectrum: non-negative half of |FFT|.
struct Spectrum {
  std::vector<double> freqs;       // 1/meters, ascending from 0
  std::vector<double> magnitudes;  // non-negative
};

enum class SpectrumWindow { kHann, kRectangular };

// Windows the signal (Hann by default; rectangular exists as a test hook),
// zero-pads to pad_to and returns the non-negative half of the FFT
// magnitude. pad_to must be a power of two >= the signal length; the
// signal must have at least 16 samples.
Spectrum spectrum(const ResampledSignal& rs, std::size_t pad_to,
                  SpectrumWindow window = SpectrumWindow::kHann);

struct StrideBand {
  double f_min = 0.8;  // 1/meters
  double f_max = 2.5;  // 1/meters
};

struct StrideEstimate {
  double f_step = 0.0;   // 1/meters
  double l_step = 0.0;   // meters, 1 / f_step
  double l_s = 0.0;      // meters, 2 * l_step
  double peak_magnitude = 0.0;
  StrideBand band;
  bool low_confidence = false;  // peak under 3x the band median
};

struct StrideConfig {
  StrideBand band;
  // Three-point parabolic interpolation around the winning bin; disable
  // for a plain discrete argmax.
  bool parabolic_refinement = true;
};

// Argmax of the magnitudes over the closed band (ties resolved toward the
// lower frequency), optionally refined by parabolic interpolation. The
// refined frequency is clamped to the band.
StrideEstimate extract_stride(const Spectrum& sp, const StrideConfig& cfg = {});

}  // namespace radargait

#endif  // RADARGAIT_GAIT_SPECTRUM_HPP

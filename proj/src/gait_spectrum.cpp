#include "radargait/gait_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "radargait/fft.hpp"

namespace radargait {

namespace {

constexpr double kHoleWeightFloor = 1e-12;

// Fills grid points that received no kernel mass by linear interpolation
// between the nearest valid neighbors (edge holes copy the nearest value).
void fill_holes(std::vector<double>& values, const std::vector<bool>& valid) {
  const std::size_t m = values.size();
  std::size_t i = 0;
  while (i < m) {
    if (valid[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < m && !valid[j]) ++j;
    const bool has_left = i > 0;
    const bool has_right = j < m;
    for (std::size_t k = i; k < j; ++k) {
      if (has_left && has_right) {
        const double frac = static_cast<double>(k - (i - 1)) /
                            static_cast<double>(j - (i - 1));
        values[k] = values[i - 1] + frac * (values[j] - values[i - 1]);
      } else if (has_left) {
        values[k] = values[i - 1];
      } else if (has_right) {
        values[k] = values[j];
      }
    }
    i = j;
  }
}

}  // namespace

ResampledSignal resample_gaussian(const std::vector<FrenetTarget>& targets,
                                  const ResampleConfig& cfg) {
  if (!(cfg.delta_d > 0.0) || !(cfg.sigma > 0.0)) {
    throw std::invalid_argument("resample_gaussian: delta_d and sigma must be > 0");
  }
  if (targets.empty()) {
    throw std::invalid_argument("resample_gaussian: empty input");
  }

  // Sorted abscissae so the truncated kernel window is a contiguous range.
  std::vector<std::pair<double, double>> samples;  // (d, v)
  samples.reserve(targets.size());
  for (const auto& ft : targets) samples.emplace_back(ft.d, ft.v);
  std::sort(samples.begin(), samples.end());

  const double d_min = samples.front().first;
  const double d_max = samples.back().first;
  if (d_max - d_min < 10.0 * cfg.delta_d) {
    throw std::invalid_argument("resample_gaussian: path span too short");
  }

  ResampledSignal rs;
  rs.d0 = d_min;
  rs.delta_d = cfg.delta_d;
  const std::size_t m = static_cast<std::size_t>(
                            std::floor((d_max - d_min) / cfg.delta_d + 1e-9)) +
                        1;
  rs.values.assign(m, 0.0);
  std::vector<bool> valid(m, false);

  const double support = 6.0 * cfg.sigma;
  const double inv_two_sigma_sq = 1.0 / (2.0 * cfg.sigma * cfg.sigma);
  for (std::size_t j = 0; j < m; ++j) {
    const double center = rs.d0 + static_cast<double>(j) * cfg.delta_d;
    auto lo = std::lower_bound(samples.begin(), samples.end(),
                               std::make_pair(center - support,
                                              -std::numeric_limits<double>::infinity()));
    double wsum = 0.0, vsum = 0.0;
    for (auto it = lo; it != samples.end() && it->first <= center + support;
         ++it) {
      const double dd = it->first - center;
      const double w = std::exp(-dd * dd * inv_two_sigma_sq);
      wsum += w;
      vsum += w * it->second;
    }
    if (wsum >= kHoleWeightFloor) {
      rs.values[j] = vsum / wsum;
      valid[j] = true;
    } else {
      ++rs.hole_count;
    }
  }
  if (rs.hole_count > 0) fill_holes(rs.values, valid);
  return rs;
}

Spectrum spectrum(const ResampledSignal& rs, std::size_t pad_to,
                  SpectrumWindow window) {
  const std::size_t m = rs.values.size();
  if (m < 16) {
    throw std::invalid_argument("spectrum: signal too short (need M >= 16)");
  }
  if (pad_to < m || !is_power_of_two(pad_to)) {
    throw std::invalid_argument("spectrum: pad_to must be a power of two >= M");
  }

  std::vector<std::complex<double>> buf(pad_to, {0.0, 0.0});
  for (std::size_t j = 0; j < m; ++j) {
    double w = 1.0;
    if (window == SpectrumWindow::kHann) {
      w = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(j) /
                                static_cast<double>(m - 1)));
    }
    buf[j] = {w * rs.values[j], 0.0};
  }
  fft_radix2(buf);

  Spectrum sp;
  const std::size_t half = pad_to / 2;
  const double df = 1.0 / (static_cast<double>(pad_to) * rs.delta_d);
  sp.freqs.reserve(half + 1);
  sp.magnitudes.reserve(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    sp.freqs.push_back(static_cast<double>(k) * df);
    sp.magnitudes.push_back(std::abs(buf[k]));
  }
  return sp;
}

StrideEstimate extract_stride(const Spectrum& sp, const StrideConfig& cfg) {
  if (sp.freqs.empty() || sp.freqs.size() != sp.magnitudes.size()) {
    throw std::invalid_argument("extract_stride: malformed spectrum");
  }
  const double f_min = cfg.band.f_min;
  const double f_max = cfg.band.f_max;
  if (!(f_min < f_max) || f_max > sp.freqs.back()) {
    throw std::invalid_argument("extract_stride: band outside spectrum support");
  }

  std::size_t first = sp.freqs.size(), last = 0;
  for (std::size_t k = 0; k < sp.freqs.size(); ++k) {
    if (sp.freqs[k] >= f_min && sp.freqs[k] <= f_max) {
      first = std::min(first, k);
      last = k;
    }
  }
  if (first > last) {
    throw std::invalid_argument("extract_stride: empty band intersection");
  }

  // Discrete argmax; the lower frequency wins ties.
  std::size_t peak = first;
  for (std::size_t k = first + 1; k <= last; ++k) {
    if (sp.magnitudes[k] > sp.magnitudes[peak]) peak = k;
  }

  StrideEstimate est;
  est.band = cfg.band;
  est.peak_magnitude = sp.magnitudes[peak];
  double f_step = sp.freqs[peak];

  if (cfg.parabolic_refinement && peak > 0 && peak + 1 < sp.magnitudes.size()) {
    const double ym = sp.magnitudes[peak - 1];
    const double y0 = sp.magnitudes[peak];
    const double yp = sp.magnitudes[peak + 1];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom < 0.0) {
      const double delta = 0.5 * (ym - yp) / denom;
      const double df = sp.freqs[1] - sp.freqs[0];
      f_step += delta * df;
    }
  }
  f_step = std::clamp(f_step, f_min, f_max);

  est.f_step = f_step;
  est.l_step = 1.0 / f_step;
  est.l_s = 2.0 / f_step;

  // Confidence gate: a real gait line should dominate the band noise floor.
  std::vector<double> band_mags(sp.magnitudes.begin() + static_cast<std::ptrdiff_t>(first),
                                sp.magnitudes.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  std::nth_element(band_mags.begin(), band_mags.begin() + band_mags.size() / 2,
                   band_mags.end());
  const double median = band_mags[band_mags.size() / 2];
  est.low_confidence = est.peak_magnitude < 3.0 * median;
  return est;
}

}  // namespace radargait

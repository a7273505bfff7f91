#include "radargait/motion_features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radargait {

MomentFeatures moment_features(const TargetWindow& w) {
  const std::size_t n = w.targets.size();
  if (n < 2) {
    throw std::invalid_argument("moment_features: need at least 2 targets");
  }
  double mean = 0.0;
  for (const auto& rt : w.targets) mean += rt.v;
  mean /= static_cast<double>(n);

  MomentFeatures mf;
  for (const auto& rt : w.targets) {
    const double dv = rt.v - mean;
    const double dv2 = dv * dv;
    mf.mu2 += dv2;
    mf.mu3 += dv2 * dv;
    mf.mu4 += dv2 * dv2;
    mf.abs_mu1 += std::abs(dv);
  }
  const double norm = 1.0 / static_cast<double>(n - 1);
  mf.mu2 *= norm;
  mf.mu3 *= norm;
  mf.mu4 *= norm;
  mf.abs_mu1 *= norm;
  return mf;
}

DopplerGrid grid_transform(const std::vector<FrenetTarget>& targets,
                           double v_ped, const GridConfig& cfg) {
  if (cfg.rows == 0 || cfg.cols == 0 || !(cfg.cell_d > 0.0) ||
      !(cfg.cell_n > 0.0) || !(cfg.smooth_sigma > 0.0)) {
    throw std::invalid_argument("grid_transform: bad config");
  }
  if (targets.empty()) {
    throw std::invalid_argument("grid_transform: empty input");
  }

  DopplerGrid grid;
  grid.rows = cfg.rows;
  grid.cols = cfg.cols;
  grid.cell_d = cfg.cell_d;
  grid.cell_n = cfg.cell_n;
  grid.cells.assign(cfg.rows * cfg.cols, 0.0);
  grid.occupancy.assign(cfg.rows * cfg.cols, false);

  double d_min = targets.front().d;
  for (const auto& ft : targets) d_min = std::min(d_min, ft.d);
  grid.d_min = d_min;

  // Raster extent: columns anchored at min d, rows centered on the path.
  const double n_min = -0.5 * static_cast<double>(cfg.rows) * cfg.cell_n;
  const double d_span = static_cast<double>(cfg.cols) * cfg.cell_d;
  const double n_span = static_cast<double>(cfg.rows) * cfg.cell_n;

  const double support = 6.0 * cfg.smooth_sigma;
  const double inv_two_sigma_sq =
      1.0 / (2.0 * cfg.smooth_sigma * cfg.smooth_sigma);

  // Kernel-weighted mean of the deviation signal per cell center. Each
  // target scatters into the cells within the truncated kernel support;
  // targets beyond the raster are cropped.
  std::vector<double> wsum(cfg.rows * cfg.cols, 0.0);
  std::vector<double> vsum(cfg.rows * cfg.cols, 0.0);
  for (const auto& ft : targets) {
    if (ft.d < d_min - support || ft.d > d_min + d_span + support) continue;
    if (ft.n < n_min - support || ft.n > n_min + n_span + support) continue;
    const long c_lo = static_cast<long>(
        std::floor((ft.d - support - d_min) / cfg.cell_d - 0.5));
    const long c_hi = static_cast<long>(
        std::ceil((ft.d + support - d_min) / cfg.cell_d - 0.5));
    const long r_lo = static_cast<long>(
        std::floor((ft.n - support - n_min) / cfg.cell_n - 0.5));
    const long r_hi = static_cast<long>(
        std::ceil((ft.n + support - n_min) / cfg.cell_n - 0.5));
    const double dev = ft.v - v_ped;
    for (long r = std::max(0L, r_lo);
         r <= std::min(static_cast<long>(cfg.rows) - 1, r_hi); ++r) {
      const double nc = n_min + (static_cast<double>(r) + 0.5) * cfg.cell_n;
      const double dn = ft.n - nc;
      for (long c = std::max(0L, c_lo);
           c <= std::min(static_cast<long>(cfg.cols) - 1, c_hi); ++c) {
        const double dc = d_min + (static_cast<double>(c) + 0.5) * cfg.cell_d;
        const double dd = ft.d - dc;
        const double r2 = dd * dd + dn * dn;
        if (r2 > support * support) continue;
        const double w = std::exp(-r2 * inv_two_sigma_sq);
        const std::size_t idx = static_cast<std::size_t>(r) * cfg.cols +
                                static_cast<std::size_t>(c);
        wsum[idx] += w;
        vsum[idx] += w * dev;
      }
    }
  }

  double max_abs = 0.0;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    if (wsum[i] >= cfg.w_min) {
      const double val = vsum[i] / wsum[i];
      grid.cells[i] = val;
      grid.occupancy[i] = true;
      max_abs = std::max(max_abs, std::abs(val));
    }
  }

  if (max_abs > 0.0) {
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
      if (grid.occupancy[i]) grid.cells[i] /= max_abs;
    }
  }
  return grid;
}

std::string grid_to_pgm(const DopplerGrid& grid) {
  std::ostringstream os;
  os << "P2\n" << grid.cols << " " << grid.rows << "\n255\n";
  for (std::size_t r = 0; r < grid.rows; ++r) {
    for (std::size_t c = 0; c < grid.cols; ++c) {
      const double v = grid.at(r, c);
      const int g = static_cast<int>(std::lround((v + 1.0) * 0.5 * 255.0));
      os << std::clamp(g, 0, 255) << (c + 1 == grid.cols ? "" : " ");
    }
    os << "\n";
  }
  return os.str();
}

HogDescriptor hog(const DopplerGrid& grid, std::size_t bins) {
  if (grid.rows < 3 || grid.cols < 3) {
    throw std::invalid_argument("hog: grid must be at least 3x3");
  }
  if (bins == 0) {
    throw std::invalid_argument("hog: need at least one bin");
  }

  HogDescriptor desc;
  desc.bins.assign(bins, 0.0);
  const double bin_width = 180.0 / static_cast<double>(bins);

  double total = 0.0;
  for (std::size_t r = 0; r < grid.rows; ++r) {
    for (std::size_t c = 0; c < grid.cols; ++c) {
      // [-1, 0, 1] central differences with replicated borders.
      const std::size_t cl = c > 0 ? c - 1 : c;
      const std::size_t cr = c + 1 < grid.cols ? c + 1 : c;
      const std::size_t ru = r > 0 ? r - 1 : r;
      const std::size_t rd = r + 1 < grid.rows ? r + 1 : r;
      const double gd = grid.at(r, cr) - grid.at(r, cl);
      const double gn = grid.at(rd, c) - grid.at(ru, c);
      const double mag = std::hypot(gd, gn);
      if (mag == 0.0) continue;

      double theta = std::atan2(gn, gd) * 180.0 / M_PI;  // (-180, 180]
      theta = std::fmod(theta + 360.0, 180.0);           // [0, 180)

      // Bilinear split between the two nearest bin centers, circular
      // across the 0/180 wrap.
      const double pos = theta / bin_width - 0.5;
      const double base = std::floor(pos);
      const double frac = pos - base;
      const long b0 = static_cast<long>(base);
      const std::size_t k0 =
          static_cast<std::size_t>(((b0 % static_cast<long>(bins)) +
                                    static_cast<long>(bins)) %
                                   static_cast<long>(bins));
      const std::size_t k1 = (k0 + 1) % bins;
      desc.bins[k0] += (1.0 - frac) * mag;
      desc.bins[k1] += frac * mag;
      total += mag;
    }
  }

  if (total <= 0.0) {
    // No gradient anywhere: fall back to the uniform histogram so the
    // descriptor stays well-defined and sums to one.
    const double u = 1.0 / static_cast<double>(bins);
    std::fill(desc.bins.begin(), desc.bins.end(), u);
    return desc;
  }
  for (auto& b : desc.bins) b /= total;
  return desc;
}

}  // namespace radargait

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "radargait/motion_features.hpp"
#include "radargait/rng.hpp"

using namespace radargait;

namespace {

TargetWindow window_with_velocities(const std::vector<double>& vs) {
  TargetWindow w;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    w.targets.push_back({0.01 * static_cast<double>(i), 0.0, 0.0, vs[i], "t"});
  }
  return w;
}

// Two-pass brute-force oracle for the central moments.
MomentFeatures moment_oracle(const std::vector<double>& vs) {
  double mean = 0.0;
  for (double v : vs) mean += v;
  mean /= static_cast<double>(vs.size());
  MomentFeatures mf;
  for (double v : vs) {
    mf.mu2 += std::pow(v - mean, 2.0);
    mf.mu3 += std::pow(v - mean, 3.0);
    mf.mu4 += std::pow(v - mean, 4.0);
    mf.abs_mu1 += std::abs(v - mean);
  }
  const double norm = 1.0 / static_cast<double>(vs.size() - 1);
  mf.mu2 *= norm;
  mf.mu3 *= norm;
  mf.mu4 *= norm;
  mf.abs_mu1 *= norm;
  return mf;
}

// Per-cell voting oracle for the HOG: literal transcription of the bin
// geometry, independent of the implementation's incremental form.
std::vector<double> hog_oracle(const DopplerGrid& g, std::size_t bins) {
  std::vector<double> hist(bins, 0.0);
  const double bin_width = 180.0 / static_cast<double>(bins);
  double total = 0.0;
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      const double left = g.at(r, c > 0 ? c - 1 : c);
      const double right = g.at(r, c + 1 < g.cols ? c + 1 : c);
      const double up = g.at(r > 0 ? r - 1 : r, c);
      const double down = g.at(r + 1 < g.rows ? r + 1 : r, c);
      const double gd = right - left;
      const double gn = down - up;
      const double mag = std::sqrt(gd * gd + gn * gn);
      if (mag == 0.0) continue;
      double theta = std::atan2(gn, gd) * 180.0 / M_PI;
      while (theta < 0.0) theta += 180.0;
      while (theta >= 180.0) theta -= 180.0;
      // Distance-weighted split between the two straddling bin centers.
      const double pos = theta / bin_width - 0.5;
      double base = std::floor(pos);
      const double frac = pos - base;
      long k0 = static_cast<long>(base) % static_cast<long>(bins);
      if (k0 < 0) k0 += static_cast<long>(bins);
      const std::size_t b0 = static_cast<std::size_t>(k0);
      const std::size_t b1 = (b0 + 1) % bins;
      hist[b0] += (1.0 - frac) * mag;
      hist[b1] += frac * mag;
      total += mag;
    }
  }
  if (total <= 0.0) {
    for (auto& h : hist) h = 1.0 / static_cast<double>(bins);
    return hist;
  }
  for (auto& h : hist) h /= total;
  return hist;
}

DopplerGrid make_grid(std::size_t rows, std::size_t cols,
                      const std::vector<double>& cells) {
  DopplerGrid g;
  g.rows = rows;
  g.cols = cols;
  g.cells = cells;
  g.occupancy.assign(rows * cols, true);
  return g;
}

}  // namespace

TEST_CASE("constant Doppler gives zero moments") {
  const auto mf = moment_features(window_with_velocities({1.3, 1.3, 1.3, 1.3}));
  CHECK(mf.mu2 == 0.0);
  CHECK(mf.mu3 == 0.0);
  CHECK(mf.mu4 == 0.0);
  CHECK(mf.abs_mu1 == 0.0);
}

TEST_CASE("hand-computed moments for v = [-1, 1]") {
  const auto mf = moment_features(window_with_velocities({-1.0, 1.0}));
  CHECK(mf.mu2 == doctest::Approx(2.0));
  CHECK(mf.mu3 == doctest::Approx(0.0));
  CHECK(mf.mu4 == doctest::Approx(2.0));
  CHECK(mf.abs_mu1 == doctest::Approx(2.0));
}

TEST_CASE("moments need two targets") {
  CHECK_THROWS_AS(moment_features(window_with_velocities({1.0})),
                  std::invalid_argument);
}

TEST_CASE("moments match the brute-force oracle on 1000 random values") {
  Rng rng(8);
  std::vector<double> vs;
  for (int i = 0; i < 1000; ++i) vs.push_back(rng.uniform(-5.0, 5.0));
  const auto got = moment_features(window_with_velocities(vs));
  const auto want = moment_oracle(vs);
  CHECK(got.mu2 == doctest::Approx(want.mu2).epsilon(1e-10));
  CHECK(got.mu3 == doctest::Approx(want.mu3).epsilon(1e-10));
  CHECK(got.mu4 == doctest::Approx(want.mu4).epsilon(1e-10));
  CHECK(got.abs_mu1 == doctest::Approx(want.abs_mu1).epsilon(1e-10));
}

TEST_CASE("moments are invariant to a constant Doppler shift") {
  Rng rng(12);
  std::vector<double> vs, shifted;
  for (int i = 0; i < 300; ++i) {
    vs.push_back(rng.normal());
    shifted.push_back(vs.back() + 2.75);
  }
  const auto a = moment_features(window_with_velocities(vs));
  const auto b = moment_features(window_with_velocities(shifted));
  CHECK(a.mu2 == doctest::Approx(b.mu2).epsilon(1e-9));
  CHECK(a.mu3 == doctest::Approx(b.mu3).epsilon(1e-8));
  CHECK(a.mu4 == doctest::Approx(b.mu4).epsilon(1e-9));
  CHECK(a.abs_mu1 == doctest::Approx(b.abs_mu1).epsilon(1e-9));
}

TEST_CASE("grid: all targets at the pedestrian speed give an all-zero grid") {
  std::vector<FrenetTarget> ft;
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    ft.push_back({rng.uniform(0.0, 6.0), rng.uniform(-0.5, 0.5), 1.4, 0.0});
  }
  const DopplerGrid g = grid_transform(ft, 1.4, {});
  for (double c : g.cells) CHECK(c == 0.0);
}

TEST_CASE("grid: single sample normalizes its cell to +1") {
  // A tight kernel keeps the sample inside one cell.
  GridConfig cfg;
  cfg.smooth_sigma = 0.01;
  std::vector<FrenetTarget> ft = {{3.05, 0.05, 3.0, 0.0}};
  const DopplerGrid g = grid_transform(ft, 1.0, cfg);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < g.cells.size(); ++i) {
    if (g.cells[i] != 0.0) {
      ++nonzero;
      CHECK(g.cells[i] == doctest::Approx(1.0));
      CHECK(g.occupancy[i]);
    }
  }
  CHECK(nonzero == 1);
}

TEST_CASE("grid: values stay in [-1, 1] and unoccupied cells are zero") {
  Rng rng(5);
  std::vector<FrenetTarget> ft;
  for (int i = 0; i < 300; ++i) {
    ft.push_back({rng.uniform(0.0, 4.0), rng.uniform(-0.8, 0.8),
                  rng.uniform(-3.0, 3.0), 0.0});
  }
  const DopplerGrid g = grid_transform(ft, 1.0, {});
  double max_abs = 0.0;
  for (std::size_t i = 0; i < g.cells.size(); ++i) {
    CHECK(g.cells[i] >= -1.0);
    CHECK(g.cells[i] <= 1.0);
    if (!g.occupancy[i]) CHECK(g.cells[i] == 0.0);
    max_abs = std::max(max_abs, std::abs(g.cells[i]));
  }
  CHECK(max_abs == doctest::Approx(1.0));
}

TEST_CASE("grid: scaling deviations by a power of two is bit-exact invariant") {
  Rng rng(7);
  std::vector<FrenetTarget> base;
  for (int i = 0; i < 250; ++i) {
    base.push_back({rng.uniform(0.0, 5.0), rng.uniform(-0.7, 0.7),
                    rng.uniform(-2.0, 2.0), 0.0});
  }
  const DopplerGrid g1 = grid_transform(base, 0.0, {});
  std::vector<FrenetTarget> scaled = base;
  for (auto& ft : scaled) ft.v *= 8.0;  // exact scaling
  const DopplerGrid g2 = grid_transform(scaled, 0.0, {});
  REQUIRE(g1.cells.size() == g2.cells.size());
  for (std::size_t i = 0; i < g1.cells.size(); ++i) {
    CHECK(g1.cells[i] == g2.cells[i]);
  }
}

TEST_CASE("hog: constant grid falls back to the uniform histogram") {
  const DopplerGrid g = make_grid(8, 8, std::vector<double>(64, 0.4));
  const HogDescriptor h = hog(g, 9);
  for (double b : h.bins) CHECK(b == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("hog: pure d-ramp puts all mass on the horizontal orientation") {
  std::vector<double> cells(8 * 8);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) cells[r * 8 + c] = 0.1 * static_cast<double>(c);
  }
  const DopplerGrid g = make_grid(8, 8, cells);
  const HogDescriptor h = hog(g, 9);
  // Orientation 0 sits exactly between the wrap-around neighbors: bins 8
  // and 0 split the mass; everything else is empty.
  CHECK(h.bins[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(h.bins[8] == doctest::Approx(0.5).epsilon(1e-9));
  for (std::size_t b = 1; b < 8; ++b) CHECK(h.bins[b] == doctest::Approx(0.0));
}

TEST_CASE("hog matches the brute-force voting oracle on random grids") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> cells(16 * 16);
    for (auto& c : cells) c = rng.uniform(-1.0, 1.0);
    const DopplerGrid g = make_grid(16, 16, cells);
    for (std::size_t bins : {9ul, 12ul}) {
      const HogDescriptor got = hog(g, bins);
      const auto want = hog_oracle(g, bins);
      REQUIRE(got.bins.size() == want.size());
      for (std::size_t b = 0; b < bins; ++b) {
        CHECK(got.bins[b] == doctest::Approx(want[b]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("hog sums to one with non-negative bins") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> cells(6 * 10);
    for (auto& c : cells) c = rng.uniform(-1.0, 1.0);
    const DopplerGrid g = make_grid(6, 10, cells);
    const HogDescriptor h = hog(g, 9);
    double sum = 0.0;
    for (double b : h.bins) {
      CHECK(b >= 0.0);
      sum += b;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("hog is invariant to grid negation (unsigned orientations)") {
  Rng rng(17);
  std::vector<double> cells(12 * 12);
  for (auto& c : cells) c = rng.uniform(-1.0, 1.0);
  const DopplerGrid g = make_grid(12, 12, cells);
  std::vector<double> neg(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) neg[i] = -cells[i];
  const DopplerGrid gn = make_grid(12, 12, neg);
  const HogDescriptor a = hog(g, 9);
  const HogDescriptor b = hog(gn, 9);
  for (std::size_t k = 0; k < a.bins.size(); ++k) {
    CHECK(std::abs(a.bins[k] - b.bins[k]) < 1e-9);
  }
}

TEST_CASE("hog rejects grids smaller than 3x3") {
  const DopplerGrid g = make_grid(2, 2, {0, 0, 0, 0});
  CHECK_THROWS_AS(hog(g, 9), std::invalid_argument);
}

TEST_CASE("grid PGM dump is well-formed") {
  GridConfig cfg;
  cfg.rows = 4;
  cfg.cols = 8;
  std::vector<FrenetTarget> ft = {{0.1, 0.0, 2.0, 0.0}, {0.5, 0.1, -1.0, 0.0}};
  const DopplerGrid g = grid_transform(ft, 0.0, cfg);
  const std::string pgm = grid_to_pgm(g);
  CHECK(pgm.substr(0, 2) == "P2");
  CHECK(pgm.find("8 4") != std::string::npos);
  CHECK(pgm.find("255") != std::string::npos);
}

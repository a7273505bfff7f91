#include "radargait/sparse_dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "radargait/fft.hpp"
#include "radargait/rng.hpp"

namespace radargait {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// Gram matrix G = D^T D and correlation c = D^T x; the coordinate descent
// works entirely in K-space.
struct CodingWorkspace {
  std::vector<double> gram;  // K x K
  std::vector<double> corr;  // K

  void compute(const ClassDictionary& d, const std::vector<double>& x) {
    const std::size_t k = d.atom_count;
    gram.assign(k * k, 0.0);
    corr.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      corr[i] = dot(d.atom(i), x.data(), d.dim);
      for (std::size_t j = i; j < k; ++j) {
        const double g = dot(d.atom(i), d.atom(j), d.dim);
        gram[i * k + j] = g;
        gram[j * k + i] = g;
      }
    }
  }
};

SparseCode coordinate_descent(const ClassDictionary& dict,
                              const std::vector<double>& x,
                              const CodingWorkspace& ws) {
  const std::size_t k = dict.atom_count;
  SparseCode code;
  code.coefficients.assign(k, 0.0);
  auto& alpha = code.coefficients;

  // G * alpha, maintained incrementally.
  std::vector<double> g_alpha(k, 0.0);
  code.converged = false;
  for (std::size_t sweep = 0; sweep < kSparseCodeMaxSweeps; ++sweep) {
    double max_update = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double gjj = ws.gram[j * k + j];
      if (gjj <= 0.0) continue;  // zero atom never activates
      const double rho = ws.corr[j] - g_alpha[j] + gjj * alpha[j];
      const double next = soft_threshold(rho, dict.lambda) / gjj;
      const double delta = next - alpha[j];
      if (delta != 0.0) {
        for (std::size_t i = 0; i < k; ++i) {
          g_alpha[i] += delta * ws.gram[i * k + j];
        }
        alpha[j] = next;
      }
      max_update = std::max(max_update, std::abs(delta));
    }
    if (max_update < kSparseCodeTol) {
      code.converged = true;
      break;
    }
  }

  // Residual-based mean squared reconstruction error.
  double err = 0.0;
  for (std::size_t p = 0; p < dict.dim; ++p) {
    double recon = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (alpha[j] != 0.0) recon += alpha[j] * dict.atoms[j * dict.dim + p];
    }
    const double r = x[p] - recon;
    err += r * r;
  }
  code.reconstruction_error = err / static_cast<double>(dict.dim);
  return code;
}

}  // namespace

SpectralImage spectral_image(const DopplerGrid& grid) {
  if (!is_power_of_two(grid.rows) || !is_power_of_two(grid.cols)) {
    throw std::invalid_argument(
        "spectral_image: grid raster must have power-of-two dimensions");
  }
  std::vector<std::complex<double>> buf(grid.cells.size());
  for (std::size_t i = 0; i < grid.cells.size(); ++i) buf[i] = {grid.cells[i], 0.0};
  fft2d(buf, grid.rows, grid.cols);

  std::vector<double> mag(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) mag[i] = std::abs(buf[i]);
  mag = fftshift2d(mag, grid.rows, grid.cols);

  double norm_sq = 0.0;
  for (double m : mag) norm_sq += m * m;
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& m : mag) m *= inv;
  }
  SpectralImage img;
  img.values = std::move(mag);
  return img;
}

SparseCode sparse_code(const SpectralImage& x, const ClassDictionary& dict) {
  if (x.values.size() != dict.dim) {
    throw std::invalid_argument("sparse_code: dimension mismatch");
  }
  CodingWorkspace ws;
  ws.compute(dict, x.values);
  return coordinate_descent(dict, x.values, ws);
}

ClassDictionary train_dictionary(const std::vector<SpectralImage>& images,
                                 MotionClass motion_class,
                                 const DictionaryTrainConfig& cfg,
                                 std::uint64_t seed) {
  if (cfg.atom_count == 0 || !(cfg.lambda > 0.0)) {
    throw std::invalid_argument("train_dictionary: bad config");
  }
  if (images.size() < cfg.atom_count) {
    throw std::invalid_argument(
        "train_dictionary: need at least as many images as atoms");
  }
  const std::size_t dim = images.front().values.size();
  for (const auto& img : images) {
    if (img.values.size() != dim) {
      throw std::invalid_argument("train_dictionary: images of unequal length");
    }
  }

  Rng rng(seed);

  // Atoms start as K distinct training images.
  std::vector<std::size_t> order(images.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.uniform_index(i + 1)]);
  }

  ClassDictionary dict;
  dict.motion_class = motion_class;
  dict.dim = dim;
  dict.atom_count = cfg.atom_count;
  dict.lambda = cfg.lambda;
  dict.atoms.resize(dim * cfg.atom_count);
  for (std::size_t k = 0; k < cfg.atom_count; ++k) {
    std::copy(images[order[k]].values.begin(), images[order[k]].values.end(),
              dict.atom(k));
  }

  const std::size_t k = cfg.atom_count;
  std::vector<double> stat_a(k * k, 0.0);    // A = sum alpha alpha^T
  std::vector<double> stat_b(dim * k, 0.0);  // B = sum x alpha^T, column-major per atom
  CodingWorkspace ws;
  std::vector<double> candidate(dim);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    // Seeded shuffle per epoch keeps the pass online in spirit while
    // staying reproducible.
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[rng.uniform_index(i + 1)]);
    }

    double worst_err = -1.0;
    std::size_t worst_idx = 0;
    for (std::size_t idx : order) {
      const auto& x = images[idx].values;
      ws.compute(dict, x);
      SparseCode code = coordinate_descent(dict, x, ws);
      const auto& alpha = code.coefficients;
      if (code.reconstruction_error > worst_err) {
        worst_err = code.reconstruction_error;
        worst_idx = idx;
      }

      for (std::size_t i = 0; i < k; ++i) {
        if (alpha[i] == 0.0) continue;
        for (std::size_t j = 0; j < k; ++j) {
          stat_a[i * k + j] += alpha[i] * alpha[j];
        }
        double* bcol = stat_b.data() + i * dim;
        for (std::size_t p = 0; p < dim; ++p) bcol[p] += x[p] * alpha[i];
      }

      // One block-coordinate pass: atom_j <- proj(atom_j + (B_j - D A_j) / A_jj).
      for (std::size_t j = 0; j < k; ++j) {
        const double ajj = stat_a[j * k + j];
        if (ajj < 1e-10) continue;
        double* atom_j = dict.atom(j);
        const double* bcol = stat_b.data() + j * dim;
        for (std::size_t p = 0; p < dim; ++p) candidate[p] = bcol[p];
        for (std::size_t i = 0; i < k; ++i) {
          const double aij = stat_a[i * k + j];
          if (aij == 0.0) continue;
          const double* atom_i = dict.atom(i);
          for (std::size_t p = 0; p < dim; ++p) candidate[p] -= aij * atom_i[p];
        }
        double norm_sq = 0.0;
        for (std::size_t p = 0; p < dim; ++p) {
          candidate[p] = atom_j[p] + candidate[p] / ajj;
          norm_sq += candidate[p] * candidate[p];
        }
        const double norm = std::sqrt(norm_sq);
        const double scale = norm > 1.0 ? 1.0 / norm : 1.0;
        for (std::size_t p = 0; p < dim; ++p) atom_j[p] = candidate[p] * scale;
      }
    }

    // Dead atoms are replaced by the direction of the epoch's worst
    // reconstructed image.
    for (std::size_t j = 0; j < k; ++j) {
      if (stat_a[j * k + j] < 1e-10) {
        const auto& src = images[worst_idx].values;
        double norm_sq = 0.0;
        for (double v : src) norm_sq += v * v;
        const double scale = norm_sq > 1.0 ? 1.0 / std::sqrt(norm_sq) : 1.0;
        double* atom_j = dict.atom(j);
        for (std::size_t p = 0; p < dim; ++p) atom_j[p] = src[p] * scale;
      }
    }
  }
  return dict;
}

double dictionary_objective(const ClassDictionary& dict,
                            const std::vector<SpectralImage>& images) {
  if (images.empty()) return 0.0;
  double total = 0.0;
  for (const auto& img : images) {
    const SparseCode code = sparse_code(img, dict);
    double l1 = 0.0;
    for (double a : code.coefficients) l1 += std::abs(a);
    total += 0.5 * code.reconstruction_error * static_cast<double>(dict.dim) +
             dict.lambda * l1;
  }
  return total / static_cast<double>(images.size());
}

DictionaryPrediction dictionary_predict(const SpectralImage& x,
                                        const std::vector<ClassDictionary>& dicts) {
  if (dicts.empty()) {
    throw std::invalid_argument("dictionary_predict: no dictionaries");
  }
  DictionaryPrediction pred;
  pred.class_errors.reserve(dicts.size());
  double best_err = std::numeric_limits<double>::infinity();
  int best_code = std::numeric_limits<int>::max();
  for (const auto& dict : dicts) {
    const SparseCode code = sparse_code(x, dict);
    pred.class_errors.push_back(code.reconstruction_error);
    const int class_code = static_cast<int>(dict.motion_class);
    // Lowest error wins; ties within 1e-12 resolve to the lowest code.
    const bool better =
        code.reconstruction_error < best_err - 1e-12 ||
        (std::abs(code.reconstruction_error - best_err) <= 1e-12 &&
         class_code < best_code);
    if (better) {
      best_err = code.reconstruction_error;
      best_code = class_code;
      pred.predicted = dict.motion_class;
    }
  }
  pred.one_hot.assign(kNumMotionClasses, 0);
  pred.one_hot[best_code] = 1;
  return pred;
}

}  // namespace radargait

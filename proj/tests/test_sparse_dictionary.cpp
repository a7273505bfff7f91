#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "radargait/rng.hpp"
#include "radargait/sparse_dictionary.hpp"

using namespace radargait;

namespace {

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

ClassDictionary make_dict(std::size_t dim, std::size_t k, double lambda,
                          std::uint64_t seed) {
  ClassDictionary d;
  d.dim = dim;
  d.atom_count = k;
  d.lambda = lambda;
  d.atoms.resize(dim * k);
  Rng rng(seed);
  for (std::size_t a = 0; a < k; ++a) {
    double norm = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      d.atoms[a * dim + p] = rng.normal();
      norm += d.atoms[a * dim + p] * d.atoms[a * dim + p];
    }
    norm = std::sqrt(norm);
    for (std::size_t p = 0; p < dim; ++p) d.atoms[a * dim + p] /= norm;
  }
  return d;
}

double lasso_objective(const ClassDictionary& d, const std::vector<double>& x,
                       const std::vector<double>& alpha) {
  double obj = 0.0;
  for (std::size_t p = 0; p < d.dim; ++p) {
    double recon = 0.0;
    for (std::size_t k = 0; k < d.atom_count; ++k) {
      recon += alpha[k] * d.atoms[k * d.dim + p];
    }
    obj += 0.5 * (x[p] - recon) * (x[p] - recon);
  }
  for (double a : alpha) obj += d.lambda * std::abs(a);
  return obj;
}

// Exhaustive-support oracle: for every support up to max_support and every
// sign pattern, solve the equality-constrained stationarity system
// D_S^T D_S a = D_S^T x - lambda * s, keep sign-consistent solutions, and
// return the best objective (the empty support is always a candidate).
double lasso_oracle(const ClassDictionary& d, const std::vector<double>& x,
                    std::size_t max_support) {
  const std::size_t k = d.atom_count;
  double best = lasso_objective(d, x, std::vector<double>(k, 0.0));

  std::vector<std::size_t> support;
  const auto solve_support = [&](const std::vector<std::size_t>& s,
                                 const std::vector<double>& signs) {
    const std::size_t m = s.size();
    // Normal matrix and right-hand side.
    std::vector<double> a(m * m, 0.0), b(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        double dot = 0.0;
        for (std::size_t p = 0; p < d.dim; ++p) {
          dot += d.atoms[s[i] * d.dim + p] * d.atoms[s[j] * d.dim + p];
        }
        a[i * m + j] = dot;
      }
      double dot = 0.0;
      for (std::size_t p = 0; p < d.dim; ++p) {
        dot += d.atoms[s[i] * d.dim + p] * x[p];
      }
      b[i] = dot - d.lambda * signs[i];
    }
    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < m; ++r) {
        if (std::abs(a[r * m + col]) > std::abs(a[pivot * m + col])) pivot = r;
      }
      if (std::abs(a[pivot * m + col]) < 1e-12) return;  // singular
      if (pivot != col) {
        for (std::size_t cc = 0; cc < m; ++cc) std::swap(a[col * m + cc], a[pivot * m + cc]);
        std::swap(b[col], b[pivot]);
      }
      for (std::size_t r = col + 1; r < m; ++r) {
        const double f = a[r * m + col] / a[col * m + col];
        for (std::size_t cc = col; cc < m; ++cc) a[r * m + cc] -= f * a[col * m + cc];
        b[r] -= f * b[col];
      }
    }
    std::vector<double> sol(m);
    for (std::size_t r = m; r-- > 0;) {
      double v = b[r];
      for (std::size_t cc = r + 1; cc < m; ++cc) v -= a[r * m + cc] * sol[cc];
      sol[r] = v / a[r * m + r];
    }
    // Sign consistency.
    for (std::size_t i = 0; i < m; ++i) {
      if (sol[i] * signs[i] < 0.0) return;
    }
    std::vector<double> alpha(k, 0.0);
    for (std::size_t i = 0; i < m; ++i) alpha[s[i]] = sol[i];
    best = std::min(best, lasso_objective(d, x, alpha));
  };

  const std::function<void(std::size_t)> recurse = [&](std::size_t start) {
    if (!support.empty()) {
      std::vector<double> signs(support.size(), 1.0);
      const std::size_t combos = 1ull << support.size();
      for (std::size_t mask = 0; mask < combos; ++mask) {
        for (std::size_t i = 0; i < support.size(); ++i) {
          signs[i] = (mask >> i) & 1 ? -1.0 : 1.0;
        }
        solve_support(support, signs);
      }
    }
    if (support.size() == max_support) return;
    for (std::size_t next = start; next < k; ++next) {
      support.push_back(next);
      recurse(next + 1);
      support.pop_back();
    }
  };
  recurse(0);
  return best;
}

bool kkt_satisfied(const ClassDictionary& d, const std::vector<double>& x,
                   const std::vector<double>& alpha, double tol) {
  for (std::size_t k = 0; k < d.atom_count; ++k) {
    double grad = 0.0;  // D_k^T (x - D alpha)
    for (std::size_t p = 0; p < d.dim; ++p) {
      double recon = 0.0;
      for (std::size_t j = 0; j < d.atom_count; ++j) {
        recon += alpha[j] * d.atoms[j * d.dim + p];
      }
      grad += d.atoms[k * d.dim + p] * (x[p] - recon);
    }
    if (alpha[k] == 0.0) {
      if (std::abs(grad) > d.lambda + tol) return false;
    } else {
      if (std::abs(grad - d.lambda * (alpha[k] > 0 ? 1.0 : -1.0)) > tol) return false;
    }
  }
  return true;
}

DopplerGrid random_grid(std::uint64_t seed, std::size_t rows = 16,
                        std::size_t cols = 64) {
  DopplerGrid g;
  g.rows = rows;
  g.cols = cols;
  g.cells.resize(rows * cols);
  g.occupancy.assign(rows * cols, true);
  Rng rng(seed);
  for (auto& c : g.cells) c = rng.uniform(-1.0, 1.0);
  return g;
}

}  // namespace

TEST_CASE("spectral image of an impulse is flat") {
  DopplerGrid g;
  g.rows = 8;
  g.cols = 16;
  g.cells.assign(8 * 16, 0.0);
  g.occupancy.assign(8 * 16, true);
  g.cells[3 * 16 + 5] = 1.0;
  const SpectralImage img = spectral_image(g);
  // |DFT| of a delta is constant; after L2 normalization every entry is
  // 1/sqrt(P).
  const double expect = 1.0 / std::sqrt(8.0 * 16.0);
  for (double v : img.values) CHECK(v == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("spectral image is invariant to circular shifts") {
  const DopplerGrid g = random_grid(2);
  DopplerGrid shifted = g;
  const std::size_t dr = 3, dc = 1;
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      shifted.cells[((r + dr) % g.rows) * g.cols + (c + dc) % g.cols] =
          g.cells[r * g.cols + c];
    }
  }
  const SpectralImage a = spectral_image(g);
  const SpectralImage b = spectral_image(shifted);
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    CHECK(std::abs(a.values[i] - b.values[i]) < 1e-9);
  }
}

TEST_CASE("spectral image of the zero grid is zero, others have unit norm") {
  DopplerGrid zero;
  zero.rows = 8;
  zero.cols = 8;
  zero.cells.assign(64, 0.0);
  zero.occupancy.assign(64, false);
  const SpectralImage zi = spectral_image(zero);
  CHECK(vec_norm(zi.values) == 0.0);

  const SpectralImage ri = spectral_image(random_grid(5));
  CHECK(vec_norm(ri.values) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sparse code of an atom with tiny lambda recovers the atom") {
  ClassDictionary d = make_dict(16, 8, 1e-6, 3);
  SpectralImage x;
  x.values.assign(d.atom(1), d.atom(1) + d.dim);
  const SparseCode code = sparse_code(x, d);
  CHECK(code.converged);
  CHECK(code.coefficients[1] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(code.reconstruction_error < 1e-8);
}

TEST_CASE("lambda above max correlation yields the exact null solution") {
  ClassDictionary d = make_dict(16, 8, 0.0, 7);
  Rng rng(9);
  SpectralImage x;
  x.values.resize(16);
  for (auto& v : x.values) v = rng.normal();
  double max_corr = 0.0;
  for (std::size_t k = 0; k < d.atom_count; ++k) {
    double c = 0.0;
    for (std::size_t p = 0; p < d.dim; ++p) c += d.atoms[k * 16 + p] * x.values[p];
    max_corr = std::max(max_corr, std::abs(c));
  }
  d.lambda = max_corr * 1.01;
  const SparseCode code = sparse_code(x, d);
  for (double a : code.coefficients) CHECK(a == 0.0);
}

TEST_CASE("coordinate descent matches the exhaustive-support oracle") {
  Rng rng(100);
  for (double lambda : {0.05, 0.1, 0.5}) {
    for (int trial = 0; trial < 10; ++trial) {
      ClassDictionary d = make_dict(16, 8, lambda, 1000 + trial);
      // Sparse ground truth keeps the optimum within the enumerated
      // support size.
      SpectralImage x;
      x.values.assign(16, 0.0);
      const std::size_t a1 = rng.uniform_index(8);
      std::size_t a2 = rng.uniform_index(8);
      while (a2 == a1) a2 = rng.uniform_index(8);
      const double c1 = rng.uniform(0.4, 1.0), c2 = rng.uniform(0.2, 0.6);
      for (std::size_t p = 0; p < 16; ++p) {
        x.values[p] = c1 * d.atoms[a1 * 16 + p] + c2 * d.atoms[a2 * 16 + p] +
                      0.01 * rng.normal();
      }
      const SparseCode code = sparse_code(x, d);
      REQUIRE(code.converged);
      CHECK(kkt_satisfied(d, x.values, code.coefficients, kKktTol));
      const double got = lasso_objective(d, x.values, code.coefficients);
      const double want = lasso_oracle(d, x.values, 3);
      CHECK(std::abs(got - want) < 1e-8);
    }
  }
}

TEST_CASE("returned code never beats the null code backwards") {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    ClassDictionary d = make_dict(16, 8, rng.uniform(0.01, 0.8), 300 + trial);
    SpectralImage x;
    x.values.resize(16);
    for (auto& v : x.values) v = rng.normal();
    const SparseCode code = sparse_code(x, d);
    const double obj = lasso_objective(d, x.values, code.coefficients);
    const double null_obj =
        lasso_objective(d, x.values, std::vector<double>(8, 0.0));
    CHECK(obj <= null_obj + 1e-12);
  }
}

TEST_CASE("reconstruction error recomputes within 1e-9") {
  ClassDictionary d = make_dict(32, 6, 0.1, 21);
  Rng rng(22);
  SpectralImage x;
  x.values.resize(32);
  for (auto& v : x.values) v = rng.normal();
  const SparseCode code = sparse_code(x, d);
  double err = 0.0;
  for (std::size_t p = 0; p < d.dim; ++p) {
    double recon = 0.0;
    for (std::size_t k = 0; k < d.atom_count; ++k) {
      recon += code.coefficients[k] * d.atoms[k * d.dim + p];
    }
    err += (x.values[p] - recon) * (x.values[p] - recon);
  }
  err /= static_cast<double>(d.dim);
  CHECK(std::abs(err - code.reconstruction_error) < 1e-9);
}

TEST_CASE("rank-1 data: a single atom converges to the data direction") {
  Rng rng(31);
  std::vector<double> u(24);
  for (auto& v : u) v = rng.normal();
  const double norm = vec_norm(u);
  for (auto& v : u) v /= norm;

  std::vector<SpectralImage> images(20);
  for (auto& img : images) img.values = u;

  DictionaryTrainConfig cfg;
  cfg.atom_count = 1;
  cfg.lambda = 0.05;
  cfg.epochs = 10;
  const ClassDictionary d =
      train_dictionary(images, MotionClass::kWalk, cfg, 77);
  double dot = 0.0;
  for (std::size_t p = 0; p < 24; ++p) dot += d.atoms[p] * u[p];
  CHECK(std::abs(dot) > 0.99);
}

TEST_CASE("training is deterministic given the seed") {
  std::vector<SpectralImage> images;
  for (int i = 0; i < 30; ++i) {
    images.push_back(spectral_image(random_grid(400 + i, 8, 16)));
  }
  DictionaryTrainConfig cfg;
  cfg.atom_count = 5;
  cfg.epochs = 3;
  const ClassDictionary a = train_dictionary(images, MotionClass::kRun, cfg, 9);
  const ClassDictionary b = train_dictionary(images, MotionClass::kRun, cfg, 9);
  REQUIRE(a.atoms.size() == b.atoms.size());
  for (std::size_t i = 0; i < a.atoms.size(); ++i) CHECK(a.atoms[i] == b.atoms[i]);
}

TEST_CASE("atom norms never exceed one") {
  std::vector<SpectralImage> images;
  for (int i = 0; i < 40; ++i) {
    images.push_back(spectral_image(random_grid(500 + i, 8, 16)));
  }
  DictionaryTrainConfig cfg;
  cfg.atom_count = 8;
  cfg.epochs = 5;
  const ClassDictionary d = train_dictionary(images, MotionClass::kJump, cfg, 4);
  for (std::size_t k = 0; k < d.atom_count; ++k) {
    std::vector<double> atom(d.atom(k), d.atom(k) + d.dim);
    CHECK(vec_norm(atom) <= 1.0 + 1e-12);
  }
}

TEST_CASE("training requires at least K images") {
  std::vector<SpectralImage> images(3);
  for (auto& img : images) img.values.assign(16, 0.5);
  DictionaryTrainConfig cfg;
  cfg.atom_count = 8;
  CHECK_THROWS_AS(train_dictionary(images, MotionClass::kWalk, cfg, 1),
                  std::invalid_argument);
}

TEST_CASE("objective is non-increasing over the epochs of online training") {
  Rng rng(61);
  std::vector<SpectralImage> images;
  for (int i = 0; i < 50; ++i) {
    images.push_back(spectral_image(random_grid(600 + i, 8, 16)));
  }
  DictionaryTrainConfig cfg;
  cfg.atom_count = 6;
  cfg.lambda = 0.1;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t epochs = 1; epochs <= 6; ++epochs) {
    cfg.epochs = epochs;
    const ClassDictionary d =
        train_dictionary(images, MotionClass::kWalk, cfg, 123);
    const double obj = dictionary_objective(d, images);
    CHECK(obj <= prev + 1e-6);
    prev = obj;
  }
}

TEST_CASE("prediction picks the class whose dictionary explains the image") {
  ClassDictionary walk = make_dict(16, 4, 1e-4, 1);
  walk.motion_class = MotionClass::kWalk;
  ClassDictionary run = make_dict(16, 4, 1e-4, 2);
  run.motion_class = MotionClass::kRun;

  SpectralImage x;
  x.values.assign(run.atom(2), run.atom(2) + 16);
  const DictionaryPrediction pred = dictionary_predict(x, {walk, run});
  CHECK(pred.predicted == MotionClass::kRun);
  CHECK(pred.one_hot[static_cast<int>(MotionClass::kRun)] == 1);
  int sum = 0;
  for (int v : pred.one_hot) {
    CHECK((v == 0 || v == 1));
    sum += v;
  }
  CHECK(sum == 1);
}

TEST_CASE("error ties resolve to the lowest class code") {
  // Identical dictionaries give identical errors for any input.
  ClassDictionary a = make_dict(16, 4, 0.1, 5);
  a.motion_class = MotionClass::kSkateboard;
  ClassDictionary b = a;
  b.motion_class = MotionClass::kJump;
  SpectralImage x;
  x.values.assign(16, 0.25);
  const DictionaryPrediction pred = dictionary_predict(x, {a, b});
  CHECK(pred.predicted == MotionClass::kJump);
}

TEST_CASE("permuting atoms leaves the reconstruction error invariant") {
  ClassDictionary d = make_dict(16, 6, 0.1, 8);
  ClassDictionary permuted = d;
  // Rotate atoms by two slots.
  for (std::size_t k = 0; k < d.atom_count; ++k) {
    const std::size_t src = (k + 2) % d.atom_count;
    std::copy(d.atom(src), d.atom(src) + d.dim, permuted.atom(k));
  }
  Rng rng(77);
  SpectralImage x;
  x.values.resize(16);
  for (auto& v : x.values) v = rng.normal();
  const SparseCode c1 = sparse_code(x, d);
  const SparseCode c2 = sparse_code(x, permuted);
  CHECK(std::abs(c1.reconstruction_error - c2.reconstruction_error) < 1e-9);
}

#ifndef RADARGAIT_SPARSE_DICTIONARY_HPP
#define RADARGAIT_SPARSE_DICTIONARY_HPP

#include <cstdint>
#include <vector>

#include "radargait/motion_features.hpp"
#include "radargait/types.hpp"

namespace radargait {

// Vectorized magnitude of the 2D FFT of a Doppler grid, zero-frequency
// centered and L2-normalized. The magnitude makes the representation
// invariant to circular grid shifts, so windows can sit anywhere inside
// the motion cycle.
struct SpectralImage {
  std::vector<double> values;  // length = grid raster size, L2 norm 1 (or all zero)
};

SpectralImage spectral_image(const DopplerGrid& grid);

// Per-class atom matrix for reconstruction-error classification. Atoms
// are stored column-major conceptually: atom k occupies
// atoms[k * dim .. (k+1) * dim).
struct ClassDictionary {
  MotionClass motion_class = MotionClass::kWalk;
  std::size_t dim = 0;    // P, image length
  std::size_t atom_count = 0;  // K
  double lambda = 0.1;    // sparsity weight
  std::vector<double> atoms;  // dim * atom_count, each atom has L2 norm <= 1

  const double* atom(std::size_t k) const { return atoms.data() + k * dim; }
  double* atom(std::size_t k) { return atoms.data() + k * dim; }
};

struct SparseCode {
  std::vector<double> coefficients;     // length K
  double reconstruction_error = 0.0;    // (1/P) * ||x - D a||^2
  bool converged = true;
};

// Lasso solve of min 0.5*||x - D a||^2 + lambda*||a||_1 by cyclic
// coordinate descent from a = 0, run to stationarity or 1000 sweeps.
// The stop threshold is tighter than the 1e-8 coordinate-update bound the
// contract asks for: on ill-conditioned problems a 1e-8 last update can
// still leave the objective ~1e-7 off the optimum. Converged solutions
// satisfy the KKT conditions to 1e-6.
SparseCode sparse_code(const SpectralImage& x, const ClassDictionary& dict);

inline constexpr double kSparseCodeTol = 1e-11;
inline constexpr std::size_t kSparseCodeMaxSweeps = 1000;
inline constexpr double kKktTol = 1e-6;

struct DictionaryTrainConfig {
  std::size_t atom_count = 16;
  double lambda = 0.1;
  std::size_t epochs = 10;
};

// Online learning with accumulated sufficient statistics: per image a
// sparse code, rank-1 updates of A and B, then one block-coordinate pass
// over the atoms with projection onto the unit ball. Atoms that never
// activate are re-seeded from the worst-reconstructed image of the epoch.
// Deterministic given the seed.
ClassDictionary train_dictionary(const std::vector<SpectralImage>& images,
                                 MotionClass motion_class,
                                 const DictionaryTrainConfig& cfg,
                                 std::uint64_t seed);

// Mean Eq.-objective over a set of images at the current dictionary:
// (1/n) * sum(0.5*||x - D a||^2 + lambda*||a||_1) with freshly coded a.
double dictionary_objective(const ClassDictionary& dict,
                            const std::vector<SpectralImage>& images);

struct DictionaryPrediction {
  MotionClass predicted = MotionClass::kWalk;
  std::vector<int> one_hot;          // kNumMotionClasses entries in {0,1}
  std::vector<double> class_errors;  // reconstruction error per dictionary
};

// Codes the image against every class dictionary and predicts the class
// with the lowest reconstruction error; ties resolve to the lowest class
// code. class_errors follows the order of dicts.
DictionaryPrediction dictionary_predict(const SpectralImage& x,
                                        const std::vector<ClassDictionary>& dicts);

}  // namespace radargait

#endif  // RADARGAIT_SPARSE_DICTIONARY_HPP

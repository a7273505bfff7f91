#ifndef RADARGAIT_RNG_HPP
#define RADARGAIT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace radargait {

// Deterministic 64-bit generator (splitmix64). All randomness in the
// library flows through this type so results are bit-identical across
// platforms and runs; the C++ standard distributions are avoided on
// purpose since their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = n * ((~0ULL) / n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent child seed from a parent seed and a stream index.
// Used for per-tree, per-window and per-class RNG streams so processing
// order can never change results.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  Rng mixer(seed ^ (0x5851f42d4c957f2dULL * (stream + 1)));
  return mixer.next_u64();
}

}  // namespace radargait

#endif  // RADARGAIT_RNG_HPP

#ifndef RADARGAIT_FFT_HPP
#define RADARGAIT_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace radargait {

// In-place iterative radix-2 Cooley-Tukey transform. Length must be a
// power of two. inverse=true applies the conjugate transform and divides
// by the length.
void fft_radix2(std::vector<std::complex<double>>& data, bool inverse = false);

// 2D transform of a rows x cols row-major array (both dimensions powers
// of two): transform each row, then each column.
void fft2d(std::vector<std::complex<double>>& data, std::size_t rows,
           std::size_t cols);

// Swaps quadrants so the zero-frequency bin ends up in the center cell
// (rows/2, cols/2). Operates on a row-major real array.
std::vector<double> fftshift2d(const std::vector<double>& data,
                               std::size_t rows, std::size_t cols);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace radargait

#endif  // RADARGAIT_FFT_HPP

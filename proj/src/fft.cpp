#include "radargait/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace radargait {

void fft_radix2(std::vector<std::complex<double>>& data, bool inverse) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("fft_radix2: length must be a power of two");
  }
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = sign * 2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& x : data) x *= inv_n;
  }
}

void fft2d(std::vector<std::complex<double>>& data, std::size_t rows,
           std::size_t cols) {
  if (data.size() != rows * cols) {
    throw std::invalid_argument("fft2d: size mismatch");
  }
  std::vector<std::complex<double>> buf;
  buf.reserve(std::max(rows, cols));
  for (std::size_t r = 0; r < rows; ++r) {
    buf.assign(data.begin() + static_cast<std::ptrdiff_t>(r * cols),
               data.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
    fft_radix2(buf);
    std::copy(buf.begin(), buf.end(),
              data.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  for (std::size_t c = 0; c < cols; ++c) {
    buf.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) buf[r] = data[r * cols + c];
    fft_radix2(buf);
    for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = buf[r];
  }
}

std::vector<double> fftshift2d(const std::vector<double>& data,
                               std::size_t rows, std::size_t cols) {
  std::vector<double> out(data.size());
  const std::size_t rh = rows / 2;
  const std::size_t ch = cols / 2;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t rr = (r + rh) % rows;
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t cc = (c + ch) % cols;
      out[rr * cols + cc] = data[r * cols + c];
    }
  }
  return out;
}

}  // namespace radargait

#include "necklab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace necklab {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(static_cast<int>(n)))
    throw std::invalid_argument("fft: size must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang =
        2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto u = a[i + j];
        const auto v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (auto& x : a) x /= static_cast<double>(n);
  }
}

std::vector<std::complex<double>> dft_ring(const std::vector<double>& v) {
  std::vector<std::complex<double>> a(v.begin(), v.end());
  fft(a);
  const double inv = 1.0 / static_cast<double>(v.size());
  for (auto& x : a) x *= inv;
  return a;
}

std::vector<double> idft_ring(const std::vector<std::complex<double>>& c) {
  std::vector<std::complex<double>> a = c;
  fft(a, /*inverse=*/true);
  std::vector<double> out(a.size());
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].real() * n;
  return out;
}

}  // namespace necklab

#pragma once

#include <complex>
#include <vector>

namespace necklab {

// In-place radix-2 FFT. Size must be a power of two.
void fft(std::vector<std::complex<double>>& a, bool inverse = false);

// Forward DFT of real samples, normalized by 1/N: coefficient n is the
// ring average of v(theta) e^{-in theta}. Output size N, index k holds
// mode n = k for k < N/2 and n = k - N for k >= N/2.
std::vector<std::complex<double>> dft_ring(const std::vector<double>& v);

// Inverse of dft_ring (discards imaginary part).
std::vector<double> idft_ring(const std::vector<std::complex<double>>& c);

// Mode number for slot k in an N-point transform.
inline int fft_mode(int k, int n) { return k < n / 2 ? k : k - n; }

bool is_power_of_two(int n);

}  // namespace necklab

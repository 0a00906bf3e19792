#ifndef VBL_FFT_HPP
#define VBL_FFT_HPP

// Radix-2 FFT and spectral derivatives for periodic real samples.
// Grid sizes are powers of two by contract, so a plain iterative
// Cooley-Tukey kernel covers everything; it is bit-deterministic
// across runs and thread counts, which the reproducibility
// guarantees elsewhere rely on.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vbl {

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n))
    throw std::invalid_argument("fft: length must be a power of two");
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w = std::polar(1.0, ang * static_cast<double>(k));
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= s;
  }
}

inline std::vector<std::complex<double>> fft_of_real(const std::vector<double>& f) {
  std::vector<std::complex<double>> a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) a[i] = f[i];
  fft_inplace(a, false);
  return a;
}

// d^order/dx^order of real samples on a uniform periodic grid of the given
// period. Wavenumbers are the true 2*pi*k/period. The Nyquist mode is zeroed
// for odd orders (its derivative has no real representative on the grid).
inline std::vector<double> spectral_derivative(const std::vector<double>& f,
                                               double period, int order) {
  if (order < 0 || order > 8)
    throw std::invalid_argument("spectral_derivative: order must be in [0, 8]");
  if (period <= 0.0)
    throw std::invalid_argument("spectral_derivative: period must be positive");
  if (order == 0) return f;
  const std::size_t n = f.size();
  auto a = fft_of_real(f);
  const double base = 2.0 * pi / period;
  for (std::size_t j = 0; j < n; ++j) {
    long k = static_cast<long>(j);
    if (j > n / 2) k -= static_cast<long>(n);
    if (j == n / 2 && (order % 2 != 0)) {
      a[j] = 0.0;
      continue;
    }
    const std::complex<double> ik(0.0, base * static_cast<double>(k));
    std::complex<double> m = 1.0;
    for (int p = 0; p < order; ++p) m *= ik;
    a[j] *= m;
  }
  fft_inplace(a, true);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = a[j].real();
  return out;
}

// Fraction of fluctuation energy (all nonzero modes) carried by the top
// third of the one-sided spectrum. Zero-energy signals count as resolved.
inline double spectrum_tail_fraction(const std::vector<double>& f) {
  const std::size_t n = f.size();
  auto a = fft_of_real(f);
  double total = 0.0, tail = 0.0;
  const std::size_t half = n / 2;
  const std::size_t cut = (2 * half) / 3;
  for (std::size_t k = 1; k <= half; ++k) {
    const double e = std::norm(a[k]);
    total += e;
    if (k > cut) tail += e;
  }
  if (total == 0.0) return 0.0;
  return tail / total;
}

}  // namespace vbl

#endif

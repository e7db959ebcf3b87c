#pragma once

// Iterative radix-2 Cooley-Tukey transform. Forward is unnormalized; the
// inverse scales by 1/N.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "dealias/image.hpp"

namespace dealias {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

inline void fft_in_place(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n))
    throw Error(ErrorKind::kInvalidArgument, "FFT length must be a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    // Twiddles computed directly per index rather than by repeated
    // multiplication, which drifts for long transforms.
    std::vector<Complex> tw(half);
    for (std::size_t k = 0; k < half; ++k) {
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
      tw[k] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * tw[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
  }
}

}  // namespace detail

inline Spectrum fft(std::span<const double> values) {
  Spectrum a(values.begin(), values.end());
  detail::fft_in_place(a, false);
  return a;
}

inline Spectrum fft(std::span<const Complex> values) {
  Spectrum a(values.begin(), values.end());
  detail::fft_in_place(a, false);
  return a;
}

inline std::vector<Complex> ifft_complex(const Spectrum& spectrum) {
  Spectrum a = spectrum;
  detail::fft_in_place(a, true);
  const double scale = 1.0 / static_cast<double>(a.size());
  for (Complex& c : a) c *= scale;
  return a;
}

// Real part of the inverse transform; imaginary residue is dropped.
inline std::vector<double> ifft(const Spectrum& spectrum) {
  const auto c = ifft_complex(spectrum);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

}  // namespace dealias

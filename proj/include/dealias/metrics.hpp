#pragma once

#include <cmath>
#include <optional>

#include "dealias/spectral_filter.hpp"

namespace dealias {

// Fraction of the AC energy of the fragment's own (offset 0) padded profile
// that falls in 0.8 f0 <= f <= 1.2 f0, summed over bands. Bins above N_C/2
// count through their mirror frequency N_C - f.
inline double aliasing_energy(const Image& image, const Fragment& fragment, double l0) {
  if (!(l0 > 0.0)) throw Error(ErrorKind::kInvalidArgument, "aliasing_energy needs l0 > 0");
  double band_energy = 0.0, ac_energy = 0.0, dc_energy = 0.0;
  for (int b = 0; b < image.bands(); ++b) {
    const auto prof = extract_profile(image, fragment, 0, b);
    const PaddedSignal padded = pad_signal(prof->values);
    const Spectrum spec = fft(std::span<const double>(padded.values));
    const double f0 = padded.n_c / l0;
    dc_energy += std::norm(spec[0]);
    for (int f = 1; f < padded.n_c; ++f) {
      const double e = std::norm(spec[f]);
      const double folded = std::min(f, padded.n_c - f);
      ac_energy += e;
      if (folded >= 0.8 * f0 && folded <= 1.2 * f0) band_energy += e;
    }
  }
  // A flat profile leaves only rounding noise in the AC bins.
  if (ac_energy <= 1e-24 * dc_energy || ac_energy == 0.0) return 0.0;
  return band_energy / ac_energy;
}

inline double aliasing_energy(const Image& image, const Fragment& fragment,
                              std::optional<double> l0) {
  if (!l0) throw Error(ErrorKind::kInvalidArgument, "aliasing_energy: undefined period");
  return aliasing_energy(image, fragment, *l0);
}

// Mean absolute per-sample difference over all bands.
inline double mean_abs_difference(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.bands() != b.bands())
    throw Error(ErrorKind::kInvalidArgument, "image shapes differ");
  double sum = 0.0;
  for (int band = 0; band < a.bands(); ++band)
    for (int y = 0; y < a.height(); ++y)
      for (int x = 0; x < a.width(); ++x) sum += std::abs(a.at(band, x, y) - b.at(band, x, y));
  return sum / (static_cast<double>(a.width()) * a.height() * a.bands());
}

}  // namespace dealias

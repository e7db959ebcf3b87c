#pragma once

// Fragment-directed frequency filtering. Brightness profiles parallel to a
// fragment are padded with mean-blended mirror margins, transformed, and
// the spectral peak at the aliasing frequency f0 = N_C / l0 is flattened
// toward a weighted mean magnitude before the profile is written back.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dealias/fft.hpp"
#include "dealias/fragmenter.hpp"
#include "dealias/image.hpp"

namespace dealias {

struct FilterParams {
  double s_l = 2.0;
  double s_u = 0.25;
  double w_s = 3.0;
  double m_s = 0.03;
};

// Number of one-pixel offsets filtered on each side of a fragment.
inline int filter_strength(int n_b, double l0, const FilterParams& params) {
  if (!(l0 > 0.0)) throw Error(ErrorKind::kInvalidArgument, "filter_strength needs l0 > 0");
  if (n_b < params.s_l * l0) return 0;
  return static_cast<int>(std::floor(params.s_u * n_b));
}

struct BrightnessProfile {
  std::vector<double> values;  // B, one per fragment pixel
  int band = 0;
  int offset = 0;
  double mean = 0.0;  // t
};

// The fragment shifted by `offset` pixels across its orientation (rows for
// horizontal fragments, columns for vertical ones). Empty if any shifted
// pixel leaves the image.
inline std::optional<std::vector<PixelCoord>> offset_pixels(const Image& image,
                                                            const Fragment& fragment,
                                                            int offset) {
  std::vector<PixelCoord> out;
  out.reserve(fragment.pixels.size());
  for (PixelCoord p : fragment.pixels) {
    const PixelCoord q = fragment.orientation == Orientation::kVertical
                             ? PixelCoord{p.x + offset, p.y}
                             : PixelCoord{p.x, p.y + offset};
    if (!image.contains(q)) return std::nullopt;
    out.push_back(q);
  }
  return out;
}

inline std::optional<BrightnessProfile> extract_profile(const Image& image,
                                                        const Fragment& fragment, int offset,
                                                        int band) {
  const auto pixels = offset_pixels(image, fragment, offset);
  if (!pixels) return std::nullopt;
  BrightnessProfile prof;
  prof.band = band;
  prof.offset = offset;
  prof.values.reserve(pixels->size());
  double sum = 0.0;
  for (PixelCoord p : *pixels) {
    prof.values.push_back(image.at(band, p));
    sum += prof.values.back();
  }
  prof.mean = prof.values.empty() ? 0.0 : sum / static_cast<double>(prof.values.size());
  return prof;
}

struct PaddedSignal {
  std::vector<double> values;  // C, length N_C
  int n_c = 0;
  int m_c = 0;  // first index holding B(0)
  int e_c = 0;  // last index holding B(N_B - 1)
};

// Smallest power of two N_C with N_C - N_B >= floor(N_B / 2).
inline int padded_length(int n_b) {
  int n = 1;
  while (n - n_b < n_b / 2) n <<= 1;
  return n;
}

// Embeds B at [m_C, e_C]. Each margin mirrors B about its nearest end
// sample and blends linearly toward the mean t, reaching t at the outer
// array ends. Margins too narrow for the blend (m_C <= 1 on the left,
// N_C - 2 - e_C <= 0 on the right) are filled with t.
inline PaddedSignal pad_signal(std::span<const double> b) {
  const int n_b = static_cast<int>(b.size());
  if (n_b < 2) throw Error(ErrorKind::kInvalidArgument, "padding needs at least two samples");
  double t = 0.0;
  for (double v : b) t += v;
  t /= n_b;

  PaddedSignal s;
  s.n_c = padded_length(n_b);
  s.m_c = (s.n_c - n_b) / 2;
  s.e_c = s.m_c + n_b - 1;
  s.values.assign(static_cast<std::size_t>(s.n_c), t);
  auto sample = [&](int i) { return b[static_cast<std::size_t>(std::clamp(i, 0, n_b - 1))]; };

  for (int x = s.m_c; x <= s.e_c; ++x) s.values[x] = b[static_cast<std::size_t>(x - s.m_c)];
  if (s.m_c > 1) {
    for (int x = 0; x < s.m_c; ++x) {
      const double w = static_cast<double>(x) / (s.m_c - 1);
      s.values[x] = w * sample(s.m_c - x) + (1.0 - w) * t;
    }
  }
  const int right_span = s.n_c - 2 - s.e_c;
  if (right_span > 0) {
    for (int x = s.e_c + 1; x < s.n_c; ++x) {
      const double w = static_cast<double>(s.n_c - 1 - x) / right_span;
      // Mirror about e_C in padded coordinates: C(2 e_C - x).
      s.values[x] = w * sample(2 * s.e_c - x - s.m_c) + (1.0 - w) * t;
    }
  }
  return s;
}

// Two bumps centred at f0/2 and 3f0/2, away from f0 and its harmonics.
inline double weight_function(double f, double f0, double w_s) {
  const double a = f - 0.5 * f0;
  const double c = f - 1.5 * f0;
  return 1.0 / (1.0 + w_s * a * a) + 1.0 / (1.0 + w_s * c * c);
}

// Weighted mean of |F(f)| over f = 0 .. N_C - 1.
inline double weighted_mean(const Spectrum& spectrum, double f0, double w_s) {
  double num = 0.0, den = 0.0;
  for (std::size_t f = 0; f < spectrum.size(); ++f) {
    const double w = weight_function(static_cast<double>(f), f0, w_s);
    num += w * std::abs(spectrum[f]);
    den += w;
  }
  return num / den;
}

// Valley around the bin of period l0: 0 at f = N_C / l0, near 1 far away,
// exactly 1 at DC.
inline double mask_function(double f, double l0, int n_c, double m_s) {
  if (f == 0.0) return 1.0;
  const double d = n_c / f - l0;
  return std::tanh(m_s * d * d);
}

// Mask over all N_C bins. Bin f above N_C/2 is the conjugate mirror of
// bin N_C - f and takes its mask value, so both halves are edited jointly.
inline std::vector<double> spectral_mask(int n_c, double l0, double m_s) {
  std::vector<double> mask(static_cast<std::size_t>(n_c));
  for (int f = 0; f < n_c; ++f)
    mask[f] = mask_function(static_cast<double>(std::min(f, n_c - f)), l0, n_c, m_s);
  return mask;
}

// Magnitudes above m move toward m by (1 - M(f)); phases are kept.
inline Spectrum flatten_peak(const Spectrum& spectrum, double m, std::span<const double> mask) {
  if (mask.size() != spectrum.size())
    throw Error(ErrorKind::kInvalidArgument, "mask and spectrum lengths differ");
  Spectrum out = spectrum;
  for (std::size_t f = 0; f < out.size(); ++f) {
    const double mag = std::abs(out[f]);
    if (mag > m) out[f] *= (mask[f] * mag + (1.0 - mask[f]) * m) / mag;
  }
  return out;
}

struct ProfileTrace {
  PaddedSignal padded;
  Spectrum spectrum;
  Spectrum filtered;
  std::vector<double> mask;
  double f0 = 0.0;
  double mean = 0.0;  // m
};

// Pad, transform, flatten at f0 and invert; returns B' (not clamped).
// Taking the real part of the inverse projects the edited spectrum onto
// its conjugate-symmetric part.
inline std::vector<double> filter_profile(std::span<const double> b, double l0,
                                          const FilterParams& params,
                                          ProfileTrace* trace = nullptr) {
  ProfileTrace local;
  ProfileTrace& tr = trace ? *trace : local;
  tr.padded = pad_signal(b);
  tr.spectrum = fft(std::span<const double>(tr.padded.values));
  tr.f0 = tr.padded.n_c / l0;
  tr.mean = weighted_mean(tr.spectrum, tr.f0, params.w_s);
  tr.mask = spectral_mask(tr.padded.n_c, l0, params.m_s);
  tr.filtered = flatten_peak(tr.spectrum, tr.mean, tr.mask);
  const std::vector<double> c = ifft(tr.filtered);
  return {c.begin() + tr.padded.m_c, c.begin() + tr.padded.e_c + 1};
}

inline void write_spectrum_dump(std::ostream& out, std::size_t fragment_id,
                                const BrightnessProfile& prof, double l0,
                                const ProfileTrace& tr) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "profile fragment=%zu band=%d offset=%d n_b=%zu n_c=%d m_c=%d e_c=%d l0=%.6f "
                "f0=%.6f m=%.9g\n",
                fragment_id, prof.band, prof.offset, prof.values.size(), tr.padded.n_c,
                tr.padded.m_c, tr.padded.e_c, l0, tr.f0, tr.mean);
  out << buf;
  for (int f = 0; f <= tr.padded.n_c / 2; ++f) {
    std::snprintf(buf, sizeof buf, "%d %.9g %.9g %.9g\n", f, std::abs(tr.spectrum[f]), tr.mask[f],
                  std::abs(tr.filtered[f]));
    out << buf;
  }
}

enum class SkipReason { kNone, kUndefinedPeriod, kPeriodBelowNyquist, kTooShort, kZeroStrength };

inline const char* to_string(SkipReason r) {
  switch (r) {
    case SkipReason::kNone: return "filtered";
    case SkipReason::kUndefinedPeriod: return "undefined_period";
    case SkipReason::kPeriodBelowNyquist: return "period_below_nyquist";
    case SkipReason::kTooShort: return "too_short";
    case SkipReason::kZeroStrength: return "zero_strength";
  }
  return "unknown";
}

inline constexpr int kMinFilterPixels = 4;

inline SkipReason skip_reason(const Fragment& fragment, std::optional<double> l0,
                              const FilterParams& params) {
  if (fragment.size() < kMinFilterPixels) return SkipReason::kTooShort;
  if (!l0) return SkipReason::kUndefinedPeriod;
  if (*l0 < 2.0) return SkipReason::kPeriodBelowNyquist;
  if (filter_strength(fragment.size(), *l0, params) == 0) return SkipReason::kZeroStrength;
  return SkipReason::kNone;
}

struct FragmentFilterResult {
  SkipReason status = SkipReason::kNone;
  int strength = 0;             // S_f
  std::vector<int> offsets;     // offsets that stayed inside the image
};

// Filters every band of every in-bounds offset profile and writes the
// results back to the pixels they were read from, clamped to [0, 1].
// Offsets of one fragment touch disjoint pixels (the fragment is strictly
// monotone along its orientation), so the processing order does not matter.
inline FragmentFilterResult filter_fragment(Image& image, const Fragment& fragment,
                                            std::optional<double> l0, const FilterParams& params,
                                            std::ostream* spectra = nullptr,
                                            std::size_t fragment_id = 0) {
  FragmentFilterResult result;
  result.status = skip_reason(fragment, l0, params);
  if (result.status != SkipReason::kNone) return result;
  result.strength = filter_strength(fragment.size(), *l0, params);

  for (int i = -result.strength; i <= result.strength; ++i) {
    const auto pixels = offset_pixels(image, fragment, i);
    if (!pixels) continue;
    result.offsets.push_back(i);
    for (int b = 0; b < image.bands(); ++b) {
      const BrightnessProfile prof = *extract_profile(image, fragment, i, b);
      ProfileTrace tr;
      const std::vector<double> filtered = filter_profile(prof.values, *l0, params, &tr);
      if (spectra) write_spectrum_dump(*spectra, fragment_id, prof, *l0, tr);
      for (std::size_t k = 0; k < pixels->size(); ++k) image.set(b, (*pixels)[k], filtered[k]);
    }
  }
  return result;
}

}  // namespace dealias

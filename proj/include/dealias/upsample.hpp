#pragma once

// Separable integer-factor upsampling. Output pixel X maps to the source
// coordinate (X + 0.5) / U - 0.5; source reads are border-replicated.

#include <array>
#include <cmath>
#include <span>

#include "dealias/image.hpp"

namespace dealias {

class ScaleFactor {
 public:
  explicit ScaleFactor(int u) : u_(u) {
    if (u < 2) throw Error(ErrorKind::kInvalidArgument, "scale factor must be >= 2");
  }
  int value() const noexcept { return u_; }
  operator int() const noexcept { return u_; }

 private:
  int u_;
};

// Cubic convolution kernel; a = -0.5 gives Catmull-Rom.
inline double cubic_kernel(double x, double a = -0.5) {
  x = std::abs(x);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
  return 0.0;
}

inline double tent_kernel(double x) {
  x = std::abs(x);
  return x < 1.0 ? 1.0 - x : 0.0;
}

namespace detail {

struct Taps {
  int first = 0;                    // leftmost source index (may be out of range)
  std::array<double, 4> weights{};  // unused trailing weights are zero
  int count = 0;
};

template <typename Kernel>
Taps make_taps(int out_index, int scale, int radius, Kernel&& kernel) {
  const double s = (out_index + 0.5) / scale - 0.5;
  const int base = static_cast<int>(std::floor(s));
  Taps t;
  t.first = base - radius + 1;
  t.count = 2 * radius;
  for (int k = 0; k < t.count; ++k) t.weights[k] = kernel(s - (t.first + k));
  return t;
}

// Horizontal pass then vertical pass, both on unclamped doubles; the single
// clamp happens when the result is stored.
template <typename Kernel>
Image upsample_separable(const Image& image, ScaleFactor scale, int radius, Kernel kernel) {
  if (image.width() < 4 || image.height() < 4)
    throw Error(ErrorKind::kInvalidArgument, "upsampling needs an image of at least 4x4");
  const int u = scale.value();
  const int ow = image.width() * u;
  const int oh = image.height() * u;

  std::vector<Taps> xtaps(ow), ytaps(oh);
  for (int x = 0; x < ow; ++x) xtaps[x] = make_taps(x, u, radius, kernel);
  for (int y = 0; y < oh; ++y) ytaps[y] = make_taps(y, u, radius, kernel);

  std::vector<Plane> out;
  out.reserve(image.bands());
  for (int b = 0; b < image.bands(); ++b) {
    const Plane& src = image.band(b);
    Plane rows(ow, image.height());
    for (int y = 0; y < image.height(); ++y)
      for (int x = 0; x < ow; ++x) {
        const Taps& t = xtaps[x];
        double acc = 0.0;
        for (int k = 0; k < t.count; ++k) acc += t.weights[k] * src.clamped(t.first + k, y);
        rows(x, y) = acc;
      }
    Plane dst(ow, oh);
    for (int y = 0; y < oh; ++y) {
      const Taps& t = ytaps[y];
      for (int x = 0; x < ow; ++x) {
        double acc = 0.0;
        for (int k = 0; k < t.count; ++k) acc += t.weights[k] * rows.clamped(x, t.first + k);
        dst(x, y) = std::clamp(acc, 0.0, 1.0);
      }
    }
    out.push_back(std::move(dst));
  }
  return Image(std::move(out));
}

}  // namespace detail

inline Image upsample_catmull_rom(const Image& image, ScaleFactor scale) {
  return detail::upsample_separable(image, scale, 2, [](double x) { return cubic_kernel(x); });
}

inline Image upsample_bilinear(const Image& image, ScaleFactor scale) {
  return detail::upsample_separable(image, scale, 1, tent_kernel);
}

}  // namespace dealias

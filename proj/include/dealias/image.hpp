#pragma once

// Raster containers shared by every stage: a generic single-plane grid and
// the multi-band Image of normalized intensities.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dealias {

enum class ErrorKind {
  kInvalidArgument,
  kUnsupportedFormat,
  kTruncatedFile,
  kZeroDimensions,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct PixelCoord {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
  friend auto operator<=>(const PixelCoord& a, const PixelCoord& b) {
    // Raster order: row first.
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

// Row-major single plane. Used directly for gradient, peakiness and edge
// maps; Image holds one per band.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(std::max(width, 0)) *
                  static_cast<std::size_t>(std::max(height, 0)),
              fill) {
    if (width < 0 || height < 0)
      throw Error(ErrorKind::kInvalidArgument, "negative grid dimensions");
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool contains(PixelCoord p) const noexcept { return contains(p.x, p.y); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }
  T& operator[](PixelCoord p) { return (*this)(p.x, p.y); }
  const T& operator[](PixelCoord p) const { return (*this)(p.x, p.y); }

  // Border-replicated read.
  const T& clamped(int x, int y) const {
    return (*this)(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using Plane = Grid<double>;

// Multi-band raster; every sample is a normalized intensity in [0, 1].
class Image {
 public:
  Image() = default;
  Image(int width, int height, int bands, double fill = 0.0) {
    if (bands < 1)
      throw Error(ErrorKind::kInvalidArgument, "image needs at least one band");
    planes_.assign(static_cast<std::size_t>(bands),
                   Plane(width, height, std::clamp(fill, 0.0, 1.0)));
  }
  explicit Image(std::vector<Plane> planes) : planes_(std::move(planes)) {
    if (planes_.empty())
      throw Error(ErrorKind::kInvalidArgument, "image needs at least one band");
    for (const Plane& p : planes_) {
      if (p.width() != planes_[0].width() || p.height() != planes_[0].height())
        throw Error(ErrorKind::kInvalidArgument, "band dimensions differ");
      for (double v : p.values())
        if (!(v >= 0.0 && v <= 1.0))
          throw Error(ErrorKind::kInvalidArgument,
                      "intensity outside [0, 1]: " + std::to_string(v));
    }
  }

  int width() const noexcept { return planes_.empty() ? 0 : planes_[0].width(); }
  int height() const noexcept { return planes_.empty() ? 0 : planes_[0].height(); }
  int bands() const noexcept { return static_cast<int>(planes_.size()); }
  bool contains(PixelCoord p) const noexcept {
    return !planes_.empty() && planes_[0].contains(p);
  }

  const Plane& band(int b) const { return planes_.at(static_cast<std::size_t>(b)); }

  double at(int b, int x, int y) const { return band(b)(x, y); }
  double at(int b, PixelCoord p) const { return band(b)[p]; }

  // Writes clamp into [0, 1] so the range invariant always holds.
  void set(int b, int x, int y, double v) {
    planes_.at(static_cast<std::size_t>(b))(x, y) = std::clamp(v, 0.0, 1.0);
  }
  void set(int b, PixelCoord p, double v) { set(b, p.x, p.y, v); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::vector<Plane> planes_;
};

// Per-pixel arithmetic mean over bands.
inline Image band_average(const Image& image) {
  if (image.bands() == 1) return image;
  Plane out(image.width(), image.height());
  const double n = image.bands();
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      const double first = image.at(0, x, y);
      double sum = 0.0;
      bool uniform = true;
      for (int b = 0; b < image.bands(); ++b) {
        sum += image.at(b, x, y);
        uniform = uniform && image.at(b, x, y) == first;
      }
      // Summing then dividing does not round-trip equal values exactly.
      out(x, y) = uniform ? first : std::clamp(sum / n, 0.0, 1.0);
    }
  return Image(std::vector<Plane>{std::move(out)});
}

}  // namespace dealias

#pragma once

// Splitting edge chains into approximately straight, coordinate-monotone
// fragments, and the aliasing period of each fragment.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "dealias/chain.hpp"

namespace dealias {

struct FragmentConfig {
  double s_d = 0.4;
  int scale = 4;  // U

  double max_deviation() const { return s_d * scale; }
};

struct Fragment {
  std::vector<PixelCoord> pixels;
  Orientation orientation = Orientation::kHorizontal;

  PixelCoord first() const { return pixels.front(); }
  PixelCoord last() const { return pixels.back(); }
  int size() const { return static_cast<int>(pixels.size()); }  // N_B
};

// Distance from p to the segment a-b.
inline double distance_to_segment(PixelCoord p, PixelCoord a, PixelCoord b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

inline bool is_approximately_straight(std::span<const PixelCoord> pixels, double max_deviation) {
  if (pixels.size() < 2)
    throw Error(ErrorKind::kInvalidArgument, "straightness needs at least two pixels");
  const PixelCoord a = pixels.front(), b = pixels.back();
  for (PixelCoord p : pixels)
    if (distance_to_segment(p, a, b) > max_deviation) return false;
  return true;
}

namespace detail {

// +1 / -1 if the coordinate strictly increases / decreases, 0 otherwise.
template <typename Coord>
int strict_direction(std::span<const PixelCoord> pixels, Coord coord) {
  if (pixels.size() < 2) return 1;
  const int dir = coord(pixels[1]) > coord(pixels[0]) ? 1 : coord(pixels[1]) < coord(pixels[0]) ? -1 : 0;
  if (dir == 0) return 0;
  for (std::size_t i = 1; i < pixels.size(); ++i)
    if ((coord(pixels[i]) - coord(pixels[i - 1])) * dir <= 0) return 0;
  return dir;
}

}  // namespace detail

// Monotonicity condition: x strictly monotone gives a horizontal fragment,
// otherwise y strictly monotone gives a vertical one.
inline std::optional<Orientation> monotone_orientation(std::span<const PixelCoord> pixels) {
  if (detail::strict_direction(pixels, [](PixelCoord p) { return p.x; }) != 0)
    return Orientation::kHorizontal;
  if (detail::strict_direction(pixels, [](PixelCoord p) { return p.y; }) != 0)
    return Orientation::kVertical;
  return std::nullopt;
}

// Greedy growth from the chain's first pixel: extend while the candidate
// stays straight within s_d * U and monotone, emit, continue after it.
inline std::vector<Fragment> extract_fragments(const Chain& chain, const FragmentConfig& cfg) {
  std::vector<Fragment> out;
  const std::span<const PixelCoord> px(chain.pixels);
  const double d = cfg.max_deviation();
  std::size_t start = 0;
  while (start < px.size()) {
    std::size_t end = start + 1;  // exclusive
    while (end < px.size()) {
      const auto candidate = px.subspan(start, end - start + 1);
      if (!monotone_orientation(candidate) || !is_approximately_straight(candidate, d)) break;
      ++end;
    }
    Fragment f;
    f.pixels.assign(px.begin() + static_cast<std::ptrdiff_t>(start),
                    px.begin() + static_cast<std::ptrdiff_t>(end));
    f.orientation = monotone_orientation(f.pixels).value_or(Orientation::kHorizontal);
    out.push_back(std::move(f));
    start = end;
  }
  return out;
}

inline std::vector<Fragment> extract_fragments(const std::vector<Chain>& chains,
                                               const FragmentConfig& cfg) {
  std::vector<Fragment> out;
  for (const Chain& c : chains) {
    auto part = extract_fragments(c, cfg);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

// Aliasing period l0 in upsampled pixels from the fragment's endpoints.
// Empty when the fragment is axis-aligned (zero denominator).
inline std::optional<double> estimate_period(PixelCoord first, PixelCoord last, int scale) {
  const double dx = std::abs(last.x - first.x);
  const double dy = std::abs(last.y - first.y);
  if (dx == 0.0 && dy == 0.0)
    throw Error(ErrorKind::kInvalidArgument, "fragment endpoints coincide");
  if (dx >= dy) {
    if (dy == 0.0) return std::nullopt;
    return scale * dx / dy;
  }
  if (dx == 0.0) return std::nullopt;
  return scale * dy / dx;
}

inline std::optional<double> estimate_period(const Fragment& f, int scale) {
  return estimate_period(f.first(), f.last(), scale);
}

inline void write_fragment_record(std::ostream& out, std::size_t id, const Fragment& f,
                                  std::optional<double> l0) {
  char buf[256];
  char period[32] = "undefined";
  if (l0) std::snprintf(period, sizeof period, "%.6f", *l0);
  std::snprintf(buf, sizeof buf, "fragment id=%zu orientation=%s x0=%d y0=%d x1=%d y1=%d n_b=%d l0=%s\n",
                id, to_string(f.orientation), f.first().x, f.first().y, f.last().x, f.last().y,
                f.size(), period);
  out << buf;
}

}  // namespace dealias

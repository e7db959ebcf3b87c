#pragma once

// Sub-pixel edge detection on an upsampled image: Sobel gradient magnitude,
// multi-angle "bump" counting along digital scan lines, thresholding and
// thinning to 1-pixel-wide edges.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "dealias/image.hpp"

namespace dealias {

using GradientMap = Plane;
using PeakinessMap = Grid<int>;
using EdgeMask = Grid<std::uint8_t>;
using ScanLine = std::vector<PixelCoord>;

// Largest Sobel magnitude reachable on [0, 1] input (|gx| and |gy| both 4).
inline constexpr double kSobelNorm = 4.0 * std::numbers::sqrt2;

struct PeakinessPass {
  int radius;       // r_p
  double min_rise;  // d_p
};

struct PeakinessConfig {
  int angles = 7;       // N
  int passes = 3;       // p_max
  int e_min = 6;
  double d_base = 0.015;
  double d_step = 0.005;
  int r_offset = 2;
  bool mirror_angles = false;  // also scan the (-pi/2, 0) half-quadrant

  // r_p = p + 2, d_p = 0.015 + 0.005 p for p = 1..p_max with defaults.
  PeakinessPass pass(int p) const { return {p + r_offset, d_base + d_step * p}; }

  std::vector<double> angle_set() const {
    std::vector<double> out;
    for (int i = 0; i < angles; ++i)
      out.push_back((i + 0.5) * (std::numbers::pi / 2.0) / angles);
    if (mirror_angles)
      for (int i = 0; i < angles; ++i) out.push_back(-out[static_cast<std::size_t>(i)]);
    return out;
  }

  int max_count() const { return passes * static_cast<int>(angle_set().size()); }
};

// Per-band Sobel magnitude divided by `norm`, averaged over bands.
inline GradientMap sobel_gradient(const Image& image, double norm = kSobelNorm) {
  GradientMap out(image.width(), image.height());
  for (int b = 0; b < image.bands(); ++b) {
    const Plane& p = image.band(b);
    for (int y = 0; y < image.height(); ++y)
      for (int x = 0; x < image.width(); ++x) {
        const double gx = (p.clamped(x + 1, y - 1) + 2.0 * p.clamped(x + 1, y) +
                           p.clamped(x + 1, y + 1)) -
                          (p.clamped(x - 1, y - 1) + 2.0 * p.clamped(x - 1, y) +
                           p.clamped(x - 1, y + 1));
        const double gy = (p.clamped(x - 1, y + 1) + 2.0 * p.clamped(x, y + 1) +
                           p.clamped(x + 1, y + 1)) -
                          (p.clamped(x - 1, y - 1) + 2.0 * p.clamped(x, y - 1) +
                           p.clamped(x + 1, y - 1));
        out(x, y) += std::sqrt(gx * gx + gy * gy) / norm;
      }
  }
  if (image.bands() > 1)
    for (double& v : out.values()) v /= image.bands();
  return out;
}

// Digital lines at `angle` to the horizontal axis (y grows downwards, so a
// positive angle descends to the right). For |angle| <= pi/4 every column is
// visited once per line and consecutive lines are one row apart; steeper
// lines swap the roles of the axes. Each pixel lies on exactly one line.
inline std::vector<ScanLine> scan_lines(double angle, int width, int height) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorKind::kInvalidArgument, "scan_lines: degenerate dimensions");
  if (!(std::abs(angle) > 0.0 && std::abs(angle) < std::numbers::pi / 2.0))
    throw Error(ErrorKind::kInvalidArgument, "scan_lines: angle must be in (0, pi/2)");

  const bool shallow = std::abs(angle) <= std::numbers::pi / 4.0;
  const int major = shallow ? width : height;
  const int minor = shallow ? height : width;
  // Minor-axis displacement of the line at each major-axis position.
  const double slope = shallow ? std::tan(angle) : 1.0 / std::tan(angle);
  std::vector<int> shift(static_cast<std::size_t>(major));
  for (int m = 0; m < major; ++m) shift[m] = static_cast<int>(std::lround(m * slope));
  const int lo = std::min(shift.front(), shift.back());
  const int hi = std::max(shift.front(), shift.back());

  std::vector<ScanLine> lines;
  for (int start = -hi; start < minor - lo; ++start) {
    ScanLine line;
    for (int m = 0; m < major; ++m) {
      const int n = start + shift[m];
      if (n < 0 || n >= minor) continue;
      line.push_back(shallow ? PixelCoord{m, n} : PixelCoord{n, m});
    }
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

// Adds one to pixel n of a line whenever it exceeds both pixels at distance
// r along the line by more than d. Line ends never increment.
inline void count_bumps(const GradientMap& grad, const ScanLine& line, PeakinessPass pass,
                        PeakinessMap& peak) {
  const int m = static_cast<int>(line.size());
  const int r = pass.radius;
  for (int n = r; n + r < m; ++n) {
    const double v = grad[line[n]];
    if (v > grad[line[n - r]] + pass.min_rise && v > grad[line[n + r]] + pass.min_rise)
      ++peak[line[n]];
  }
}

inline PeakinessMap accumulate_peakiness(const GradientMap& grad, const PeakinessConfig& cfg) {
  PeakinessMap peak(grad.width(), grad.height(), 0);
  if (grad.empty()) return peak;
  const std::vector<double> angles = cfg.angle_set();
  // Scan lines depend only on the angle, so build them once for all passes.
  std::vector<std::vector<ScanLine>> lines_per_angle;
  lines_per_angle.reserve(angles.size());
  for (double a : angles) lines_per_angle.push_back(scan_lines(a, grad.width(), grad.height()));

  for (int p = 1; p <= cfg.passes; ++p) {
    const PeakinessPass pass = cfg.pass(p);
    for (const auto& lines : lines_per_angle)
      for (const ScanLine& line : lines) count_bumps(grad, line, pass, peak);
  }
  return peak;
}

inline EdgeMask threshold_edges(const PeakinessMap& peak, int e_min) {
  EdgeMask mask(peak.width(), peak.height(), 0);
  for (int y = 0; y < peak.height(); ++y)
    for (int x = 0; x < peak.width(); ++x) mask(x, y) = peak(x, y) >= e_min ? 1 : 0;
  return mask;
}

// --- neighborhood helpers shared with the refiner and fragmenter ---

// 8-neighborhood in clockwise order starting east (y grows downwards):
// E, SE, S, SW, W, NW, N, NE.
inline constexpr std::array<PixelCoord, 8> kNeighbors8 = {{
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};

inline bool is_set(const EdgeMask& mask, int x, int y) {
  return mask.contains(x, y) && mask(x, y) != 0;
}

inline int edge_neighbor_count(const EdgeMask& mask, PixelCoord p) {
  int n = 0;
  for (PixelCoord d : kNeighbors8) n += is_set(mask, p.x + d.x, p.y + d.y);
  return n;
}

inline bool are_8_adjacent(PixelCoord a, PixelCoord b) {
  return a != b && std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1;
}

// Yokoi connectivity number for 8-connected foreground. A set pixel whose
// number equals 1 is simple: removing it changes no connectivity.
inline int yokoi_connectivity8(const EdgeMask& mask, PixelCoord p) {
  std::array<int, 9> inv{};
  for (int k = 0; k < 8; ++k)
    inv[k] = is_set(mask, p.x + kNeighbors8[k].x, p.y + kNeighbors8[k].y) ? 0 : 1;
  inv[8] = inv[0];
  int n = 0;
  for (int k = 0; k < 8; k += 2) n += inv[k] - inv[k] * inv[k + 1] * inv[(k + 2) % 8];
  return n;
}

inline std::size_t count_edges(const EdgeMask& mask) {
  std::size_t n = 0;
  for (auto v : mask.values()) n += v != 0;
  return n;
}

// Two-subiteration thinning. Candidates follow the Zhang-Suen directional
// rule, but a pixel is only removed if, at the moment of removal, it is
// simple (8-connectivity) and not a line end. Removals within a
// subiteration are applied in raster order. Iterates to a fixed point, so
// the result is idempotent and has the 8-connected component count of the
// input.
inline EdgeMask thin(const EdgeMask& input) {
  EdgeMask mask = input;
  auto at = [&](PixelCoord p, int k) {
    return is_set(mask, p.x + kNeighbors8[k].x, p.y + kNeighbors8[k].y) ? 1 : 0;
  };
  // Indices into kNeighbors8.
  constexpr int E = 0, S = 2, W = 4, N = 6;

  bool changed = true;
  while (changed) {
    changed = false;
    for (int sub = 0; sub < 2; ++sub) {
      std::vector<PixelCoord> candidates;
      for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x) {
          if (!mask(x, y)) continue;
          const PixelCoord p{x, y};
          const bool dir_ok = sub == 0 ? (at(p, N) * at(p, E) * at(p, S) == 0 &&
                                          at(p, E) * at(p, S) * at(p, W) == 0)
                                       : (at(p, N) * at(p, E) * at(p, W) == 0 &&
                                          at(p, N) * at(p, S) * at(p, W) == 0);
          if (dir_ok && edge_neighbor_count(mask, p) >= 2 && yokoi_connectivity8(mask, p) == 1)
            candidates.push_back(p);
        }
      for (PixelCoord p : candidates) {
        if (edge_neighbor_count(mask, p) >= 2 && yokoi_connectivity8(mask, p) == 1) {
          mask[p] = 0;
          changed = true;
        }
      }
    }
  }
  return mask;
}

}  // namespace dealias

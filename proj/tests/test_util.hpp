#pragma once

#include <deque>
#include <random>
#include <string>
#include <vector>

#include "dealias/image.hpp"
#include "dealias/edge_detector.hpp"

namespace dealias::testing {

// Rows of '#' (edge) and '.' (background).
inline EdgeMask mask_from_rows(const std::vector<std::string>& rows) {
  EdgeMask m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()), 0);
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) m(x, y) = rows[y][x] == '#';
  return m;
}

inline std::vector<std::string> rows_from_mask(const EdgeMask& m) {
  std::vector<std::string> rows;
  for (int y = 0; y < m.height(); ++y) {
    std::string r;
    for (int x = 0; x < m.width(); ++x) r += m(x, y) ? '#' : '.';
    rows.push_back(r);
  }
  return rows;
}

inline EdgeMask mask_from_pixels(int w, int h, const std::vector<PixelCoord>& px) {
  EdgeMask m(w, h, 0);
  for (PixelCoord p : px) m[p] = 1;
  return m;
}

// Independent 8-connected component labeling (flood fill).
inline int count_components8(const EdgeMask& m) {
  Grid<int> label(m.width(), m.height(), 0);
  int n = 0;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      if (!m(x, y) || label(x, y)) continue;
      ++n;
      std::deque<PixelCoord> q{{x, y}};
      label(x, y) = n;
      while (!q.empty()) {
        PixelCoord p = q.front();
        q.pop_front();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = p.x + dx, ny = p.y + dy;
            if (m.contains(nx, ny) && m(nx, ny) && !label(nx, ny)) {
              label(nx, ny) = n;
              q.push_back({nx, ny});
            }
          }
      }
    }
  return n;
}

inline Image random_image(std::mt19937_64& rng, int w, int h, int bands, bool quantized = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> q(0, 255);
  Image img(w, h, bands);
  for (int b = 0; b < bands; ++b)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) img.set(b, x, y, quantized ? q(rng) / 255.0 : u(rng));
  return img;
}

inline Image gray_from_rows(const std::vector<std::vector<double>>& rows) {
  Plane p(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
  for (int y = 0; y < p.height(); ++y)
    for (int x = 0; x < p.width(); ++x) p(x, y) = rows[y][x];
  return Image(std::vector<Plane>{std::move(p)});
}

}  // namespace dealias::testing

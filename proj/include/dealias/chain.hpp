#pragma once

// Edge chains: maximal simple 8-connected paths of non-branch edge pixels,
// and their decomposition into axis-aligned runs.

#include <cstdlib>
#include <vector>

#include "dealias/edge_detector.hpp"

namespace dealias {

enum class Orientation { kHorizontal, kVertical, kUnclassified };

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::kHorizontal: return "horizontal";
    case Orientation::kVertical: return "vertical";
    default: return "unclassified";
  }
}

// A maximal sequence of 4-adjacent pixels along one axis. Length-1 runs
// have no orientation of their own (kUnclassified).
struct Run {
  std::size_t start = 0;
  std::size_t length = 0;
  Orientation orientation = Orientation::kUnclassified;
};

struct Chain {
  std::vector<PixelCoord> pixels;
  bool closed = false;  // a cycle with no endpoint or branch pixel
};

// A pixel with more than two edge neighbors.
inline bool is_branch_pixel(const EdgeMask& mask, PixelCoord p) {
  return is_set(mask, p.x, p.y) && edge_neighbor_count(mask, p) > 2;
}

inline Grid<std::uint8_t> branch_pixels(const EdgeMask& mask) {
  Grid<std::uint8_t> out(mask.width(), mask.height(), 0);
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) out(x, y) = is_branch_pixel(mask, {x, y});
  return out;
}

// Every non-branch edge pixel ends up in exactly one chain. Open chains are
// started from raster-ordered pixels with at most one non-branch neighbor;
// the remaining pixels form closed cycles.
inline std::vector<Chain> trace_chains(const EdgeMask& mask) {
  const Grid<std::uint8_t> branch = branch_pixels(mask);
  Grid<std::uint8_t> visited(mask.width(), mask.height(), 0);
  auto traceable = [&](int x, int y) {
    return is_set(mask, x, y) && !branch(x, y) && !visited(x, y);
  };
  auto free_neighbors = [&](PixelCoord p) {
    int n = 0;
    for (PixelCoord d : kNeighbors8) n += is_set(mask, p.x + d.x, p.y + d.y) && !branch(p.x + d.x, p.y + d.y);
    return n;
  };
  // 4-neighbors first so that a path prefers axis steps over diagonals.
  constexpr std::array<int, 8> kOrder = {0, 2, 4, 6, 1, 3, 5, 7};

  auto trace_from = [&](PixelCoord start) {
    Chain chain;
    PixelCoord cur = start;
    visited[cur] = 1;
    chain.pixels.push_back(cur);
    for (;;) {
      bool advanced = false;
      for (int k : kOrder) {
        const PixelCoord next{cur.x + kNeighbors8[k].x, cur.y + kNeighbors8[k].y};
        if (traceable(next.x, next.y)) {
          visited[next] = 1;
          chain.pixels.push_back(next);
          cur = next;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
    return chain;
  };

  std::vector<Chain> chains;
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (traceable(x, y) && free_neighbors({x, y}) <= 1) chains.push_back(trace_from({x, y}));
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (traceable(x, y)) {
        Chain c = trace_from({x, y});
        c.closed = c.pixels.size() > 2 && are_8_adjacent(c.pixels.front(), c.pixels.back());
        chains.push_back(std::move(c));
      }
  return chains;
}

inline Orientation step_orientation(PixelCoord a, PixelCoord b) {
  if (a.y == b.y && std::abs(a.x - b.x) == 1) return Orientation::kHorizontal;
  if (a.x == b.x && std::abs(a.y - b.y) == 1) return Orientation::kVertical;
  return Orientation::kUnclassified;
}

// Splits a pixel path into maximal axis-aligned runs. A run continues while
// consecutive steps are 4-steps along the run's axis; diagonal steps and
// turns start a new run.
inline std::vector<Run> decompose_runs(const std::vector<PixelCoord>& pixels) {
  std::vector<Run> runs;
  if (pixels.empty()) return runs;
  Run cur{0, 1, Orientation::kUnclassified};
  for (std::size_t i = 1; i < pixels.size(); ++i) {
    const Orientation step = step_orientation(pixels[i - 1], pixels[i]);
    const bool extends = step != Orientation::kUnclassified &&
                         (cur.length == 1 || cur.orientation == step);
    if (extends) {
      cur.orientation = step;
      ++cur.length;
    } else {
      runs.push_back(cur);
      cur = Run{i, 1, Orientation::kUnclassified};
    }
  }
  runs.push_back(cur);
  return runs;
}

}  // namespace dealias

#pragma once

// Cleanup of thinned edge maps: short-branch deletion, removal of
// protruding pixels, and staircase "waving" reduction by junction moves.

#include <algorithm>
#include <cstdio>
#include <deque>
#include <ostream>
#include <vector>

#include "dealias/chain.hpp"

namespace dealias {

struct CleaningConfig {
  int l_min = 4;
  int l1 = 3;
  int l2 = 1;
  int n_w = 50;
};

namespace detail {

// 8-connected components of non-branch edge pixels.
inline std::vector<std::vector<PixelCoord>> edge_segments(const EdgeMask& mask) {
  const Grid<std::uint8_t> branch = branch_pixels(mask);
  Grid<std::uint8_t> seen(mask.width(), mask.height(), 0);
  std::vector<std::vector<PixelCoord>> segments;
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(x, y) || branch(x, y) || seen(x, y)) continue;
      std::vector<PixelCoord> seg;
      std::deque<PixelCoord> queue{{x, y}};
      seen(x, y) = 1;
      while (!queue.empty()) {
        const PixelCoord p = queue.front();
        queue.pop_front();
        seg.push_back(p);
        for (PixelCoord d : kNeighbors8) {
          const PixelCoord q{p.x + d.x, p.y + d.y};
          if (is_set(mask, q.x, q.y) && !branch[q] && !seen[q]) {
            seen[q] = 1;
            queue.push_back(q);
          }
        }
      }
      segments.push_back(std::move(seg));
    }
  return segments;
}

}  // namespace detail

// For k = 1 .. L_min - 1, deletes segments (delimited by branch pixels) of
// length <= k, re-measuring after every deletion round. Step k repeats until
// no such segment remains; merged segments are therefore only ever deleted
// once they are shorter than the current k.
inline EdgeMask clean_short_branches(const EdgeMask& input, int l_min) {
  if (l_min < 2) throw Error(ErrorKind::kInvalidArgument, "L_min must be >= 2");
  EdgeMask mask = input;
  for (int k = 1; k < l_min; ++k) {
    for (;;) {
      bool deleted = false;
      for (const auto& seg : detail::edge_segments(mask)) {
        if (static_cast<int>(seg.size()) > k) continue;
        for (PixelCoord p : seg) mask[p] = 0;
        deleted = true;
      }
      if (!deleted) break;
    }
  }
  return mask;
}

// Removes pixels whose only two edge neighbors touch each other (a triangle
// jog). Removal never disconnects anything because the two neighbors stay
// 8-adjacent. Repeats until nothing changes.
inline EdgeMask remove_protruding_pixels(const EdgeMask& input) {
  EdgeMask mask = input;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int y = 0; y < mask.height(); ++y)
      for (int x = 0; x < mask.width(); ++x) {
        if (!mask(x, y)) continue;
        PixelCoord nb[2];
        int n = 0;
        for (PixelCoord d : kNeighbors8)
          if (is_set(mask, x + d.x, y + d.y)) {
            if (n < 2) nb[n] = {x + d.x, y + d.y};
            ++n;
          }
        if (n == 2 && are_8_adjacent(nb[0], nb[1])) {
          mask(x, y) = 0;
          changed = true;
        }
      }
  }
  return mask;
}

// Maximum number of one-pixel moves a junction between runs of lengths s1
// and s2 may make.
inline int junction_move_limit(int s1, int s2, int l1, int l2) {
  if (s1 < 1 || s2 < 1) throw Error(ErrorKind::kInvalidArgument, "run lengths must be >= 1");
  return std::min(std::max(s1, s2), l1 * std::min(s1, s2) + l2);
}

// Corner between run `run` and run `run + 1` of chain `chain`.
struct Junction {
  std::size_t chain = 0;
  std::size_t run = 0;
  double corner_x = 0.0;  // midway between the two adjacent pixels
  double corner_y = 0.0;
  int s1 = 0;  // current length of the earlier run
  int s2 = 0;  // current length of the later run
  Orientation orientation = Orientation::kUnclassified;
  int l_max = 0;
  int moved = 0;

  bool movable() const { return orientation != Orientation::kUnclassified; }
};

struct WavingResult {
  EdgeMask mask;
  std::vector<Chain> chains;
  std::vector<Junction> junctions;
  int sweeps = 0;
};

namespace detail {

inline bool run_fits(const Run& r, Orientation o) {
  return r.length == 1 || r.orientation == o;
}

// Horizontal iff both runs are horizontal-compatible and exactly one is a
// single pixel; symmetrically for vertical.
inline Orientation classify_junction(const Run& a, const Run& b) {
  if ((a.length == 1) == (b.length == 1)) return Orientation::kUnclassified;
  const Orientation o = a.length > 1 ? a.orientation : b.orientation;
  if (o == Orientation::kUnclassified) return o;
  return run_fits(a, o) && run_fits(b, o) ? o : Orientation::kUnclassified;
}

struct ChainRuns {
  Chain* chain;
  std::vector<Run> runs;
};

inline void update_corner(Junction& j, const ChainRuns& cr) {
  const PixelCoord a = cr.chain->pixels[cr.runs[j.run + 1].start - 1];
  const PixelCoord b = cr.chain->pixels[cr.runs[j.run + 1].start];
  j.corner_x = (a.x + b.x) / 2.0;
  j.corner_y = (a.y + b.y) / 2.0;
  j.s1 = static_cast<int>(cr.runs[j.run].length);
  j.s2 = static_cast<int>(cr.runs[j.run + 1].length);
}

// Moves the junction-adjacent pixel of the longer run into the row (or
// column) of the shorter run. Returns false when the move is not possible
// geometrically: the runs no longer fit the junction's orientation, the
// runs meet with a 4-step (the target is occupied), or the target pixel
// would touch anything besides its two chain neighbors.
inline bool try_move(Junction& j, ChainRuns& cr, EdgeMask& mask) {
  Run& a = cr.runs[j.run];
  Run& b = cr.runs[j.run + 1];
  if (!run_fits(a, j.orientation) || !run_fits(b, j.orientation)) return false;
  const bool longer_first = a.length > b.length;
  auto& px = cr.chain->pixels;
  const std::size_t e_idx = longer_first ? b.start - 1 : b.start;
  const std::size_t adj_idx = longer_first ? b.start : b.start - 1;
  const PixelCoord e = px[e_idx];
  const PixelCoord adj = px[adj_idx];
  const PixelCoord target = j.orientation == Orientation::kHorizontal ? PixelCoord{e.x, adj.y}
                                                                      : PixelCoord{adj.x, e.y};
  if (target == e || is_set(mask, target.x, target.y)) return false;

  mask[e] = 0;
  if (edge_neighbor_count(mask, target) != 2) {
    mask[e] = 1;
    return false;
  }
  mask[target] = 1;
  px[e_idx] = target;
  if (longer_first) {
    --a.length;
    --b.start;
    ++b.length;
    b.orientation = j.orientation;
  } else {
    ++a.length;
    ++b.start;
    --b.length;
    a.orientation = j.orientation;
  }
  ++j.moved;
  update_corner(j, cr);
  return true;
}

}  // namespace detail

// Balances staircase steps. Junctions are classified and their move budget
// l_max fixed once; then whole-map sweeps visit junctions in (chain, position)
// order and move each eligible junction by one pixel. Sweeps stop after one
// that changes nothing, or after N_w sweeps.
inline WavingResult reduce_waving_detailed(const EdgeMask& input, const CleaningConfig& cfg) {
  if (cfg.n_w < 1) throw Error(ErrorKind::kInvalidArgument, "N_w must be >= 1");
  WavingResult result;
  result.mask = input;
  result.chains = trace_chains(input);

  std::vector<detail::ChainRuns> chain_runs;
  for (std::size_t c = 0; c < result.chains.size(); ++c) {
    chain_runs.push_back({&result.chains[c], decompose_runs(result.chains[c].pixels)});
    const auto& runs = chain_runs.back().runs;
    for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
      Junction j;
      j.chain = c;
      j.run = r;
      j.orientation = detail::classify_junction(runs[r], runs[r + 1]);
      detail::update_corner(j, chain_runs.back());
      if (j.movable()) j.l_max = junction_move_limit(j.s1, j.s2, cfg.l1, cfg.l2);
      result.junctions.push_back(j);
    }
  }

  bool changed = true;
  while (changed && result.sweeps < cfg.n_w) {
    changed = false;
    ++result.sweeps;
    for (Junction& j : result.junctions) {
      if (!j.movable() || j.moved >= j.l_max) continue;
      auto& cr = chain_runs[j.chain];
      const int s1 = static_cast<int>(cr.runs[j.run].length);
      const int s2 = static_cast<int>(cr.runs[j.run + 1].length);
      if (std::abs(s1 - s2) <= 1) continue;
      changed = detail::try_move(j, cr, result.mask) || changed;
    }
  }
  for (Junction& j : result.junctions) detail::update_corner(j, chain_runs[j.chain]);
  return result;
}

inline EdgeMask reduce_waving(const EdgeMask& input, const CleaningConfig& cfg) {
  return reduce_waving_detailed(input, cfg).mask;
}

// One line per junction.
inline void write_junction_dump(std::ostream& out, const std::vector<Junction>& junctions) {
  char buf[256];
  for (const Junction& j : junctions) {
    std::snprintf(buf, sizeof buf,
                  "junction chain=%zu run=%zu corner=%.1f,%.1f s1=%d s2=%d orientation=%s "
                  "l_max=%d moved=%d\n",
                  j.chain, j.run, j.corner_x, j.corner_y, j.s1, j.s2, to_string(j.orientation),
                  j.l_max, j.moved);
    out << buf;
  }
}

}  // namespace dealias

#pragma once

// Synthetic aliased test images: a straight half-plane edge rendered with
// exact pixel coverage, then a gray response distortion and optional
// sharpening.

#include <array>
#include <cmath>
#include <vector>

#include "dealias/image.hpp"

namespace dealias {

struct SyntheticSpec {
  int width = 64;
  int height = 64;
  // Edge direction (run : rise). dx = 4, dy = 1 is a shallow 1:4 slope.
  int slope_dx = 4;
  int slope_dy = 1;
  double gamma = 1.0;
  double unsharp = 0.0;
  // > 0 replaces the hard coverage edge with a smooth erf ramp of this
  // width (in low-resolution pixels).
  double softness = 0.0;
};

struct EdgeLine {
  double x0 = 0.0, y0 = 0.0;  // point on the edge, continuous pixel coords
  double dx = 0.0, dy = 0.0;  // direction
};

struct SyntheticImage {
  Image image;
  EdgeLine edge;
};

namespace detail {

struct Vec2 {
  double x, y;
};

// Area of the unit pixel [px, px+1] x [py, py+1] where a*x + b*y + c >= 0.
inline double half_plane_coverage(int px, int py, double a, double b, double c) {
  const std::array<Vec2, 4> square = {{{double(px), double(py)},
                                       {px + 1.0, double(py)},
                                       {px + 1.0, py + 1.0},
                                       {double(px), py + 1.0}}};
  std::vector<Vec2> poly;
  auto side = [&](Vec2 p) { return a * p.x + b * p.y + c; };
  for (std::size_t i = 0; i < square.size(); ++i) {
    const Vec2 p = square[i], q = square[(i + 1) % square.size()];
    const double sp = side(p), sq = side(q);
    if (sp >= 0) poly.push_back(p);
    if ((sp >= 0) != (sq >= 0)) {
      const double t = sp / (sp - sq);
      poly.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  double area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
    area += p.x * q.y - q.x * p.y;
  }
  return std::clamp(std::abs(area) / 2.0, 0.0, 1.0);
}

inline Plane box_blur3(const Plane& p) {
  Plane out(p.width(), p.height());
  for (int y = 0; y < p.height(); ++y)
    for (int x = 0; x < p.width(); ++x) {
      double s = 0.0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) s += p.clamped(x + dx, y + dy);
      out(x, y) = s / 9.0;
    }
  return out;
}

}  // namespace detail

// The edge passes through the image centre; the side below it (larger y)
// is bright.
inline SyntheticImage generate_synthetic(const SyntheticSpec& spec) {
  if (spec.slope_dx == 0 && spec.slope_dy == 0)
    throw Error(ErrorKind::kInvalidArgument, "degenerate edge slope");
  if (spec.width < 1 || spec.height < 1)
    throw Error(ErrorKind::kInvalidArgument, "synthetic image needs positive size");
  if (!(spec.gamma > 0.0)) throw Error(ErrorKind::kInvalidArgument, "gamma must be positive");

  SyntheticImage out;
  out.edge = {spec.width / 2.0, spec.height / 2.0, double(spec.slope_dx), double(spec.slope_dy)};
  // cross(direction, p - centre) >= 0 on the bright side.
  const double a = -out.edge.dy;
  const double b = out.edge.dx;
  const double c = -(a * out.edge.x0 + b * out.edge.y0);
  const double norm = std::hypot(a, b);

  Plane plane(spec.width, spec.height);
  for (int y = 0; y < spec.height; ++y)
    for (int x = 0; x < spec.width; ++x) {
      double v;
      if (spec.softness > 0.0) {
        const double dist = (a * (x + 0.5) + b * (y + 0.5) + c) / norm;
        v = 0.5 * (1.0 + std::erf(dist / spec.softness));
      } else {
        v = detail::half_plane_coverage(x, y, a, b, c);
      }
      plane(x, y) = std::pow(v, spec.gamma);
    }
  if (spec.unsharp != 0.0) {
    const Plane blur = detail::box_blur3(plane);
    for (int y = 0; y < spec.height; ++y)
      for (int x = 0; x < spec.width; ++x)
        plane(x, y) = std::clamp(plane(x, y) + spec.unsharp * (plane(x, y) - blur(x, y)), 0.0, 1.0);
  }
  out.image = Image(std::vector<Plane>{std::move(plane)});
  return out;
}

}  // namespace dealias

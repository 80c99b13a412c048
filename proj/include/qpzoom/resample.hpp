#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qpzoom/geometry.hpp"
#include "qpzoom/warp_grid.hpp"

namespace qpzoom {

namespace detail {

/// Precomputed bilinear tap along one axis.
template <typename Scalar>
struct Tap {
  int i0;
  int i1;
  Scalar frac;
};

// Coordinates are clamped to the border pixel centers.
template <typename Scalar>
Tap<Scalar> make_tap(Scalar coord, int size) {
  const Scalar c = std::clamp(coord, Scalar(0), Scalar(size - 1));
  const int i0 = std::min(static_cast<int>(std::floor(c)), size - 1);
  const int i1 = std::min(i0 + 1, size - 1);
  return {i0, i1, c - Scalar(i0)};
}

template <typename Scalar>
Image<Scalar> sample_separable(const Image<Scalar>& src, const std::vector<Tap<Scalar>>& xt,
                               const std::vector<Tap<Scalar>>& yt) {
  const int w = static_cast<int>(xt.size());
  const int h = static_cast<int>(yt.size());
  const int ch = src.channels();
  Image<Scalar> out(w, h, ch);
  for (int yp = 0; yp < h; ++yp) {
    const Tap<Scalar>& ty = yt[yp];
    for (int xp = 0; xp < w; ++xp) {
      const Tap<Scalar>& tx = xt[xp];
      for (int c = 0; c < ch; ++c) {
        const Scalar a = src(tx.i0, ty.i0, c);
        const Scalar b = src(tx.i1, ty.i0, c);
        const Scalar d = src(tx.i0, ty.i1, c);
        const Scalar e = src(tx.i1, ty.i1, c);
        const Scalar top = a + tx.frac * (b - a);
        const Scalar bottom = d + tx.frac * (e - d);
        out(xp, yp, c) = top + ty.frac * (bottom - top);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Bilinear sample at continuous pixel-index coordinates, clamp-to-edge.
template <typename Scalar>
Scalar bilinear_sample(const Image<Scalar>& src, Scalar x, Scalar y, int c = 0) {
  const auto tx = detail::make_tap(x, src.width());
  const auto ty = detail::make_tap(y, src.height());
  const Scalar a = src(tx.i0, ty.i0, c);
  const Scalar b = src(tx.i1, ty.i0, c);
  const Scalar d = src(tx.i0, ty.i1, c);
  const Scalar e = src(tx.i1, ty.i1, c);
  const Scalar top = a + tx.frac * (b - a);
  const Scalar bottom = d + tx.frac * (e - d);
  return top + ty.frac * (bottom - top);
}

/// Resample src through the axis map: out(x', y') = src(x_map(x'+1/2)-1/2, y_map(y'+1/2)-1/2).
template <typename Scalar>
Image<Scalar> warp(const Image<Scalar>& src, const AxisMap<Scalar>& am) {
  if (src.empty()) throw InvalidArgument("warp: empty source image");
  const int w = static_cast<int>(std::lround(am.w()));
  const int h = static_cast<int>(std::lround(am.h()));
  if (w <= 0 || h <= 0) throw InvalidArgument("warp: empty target extent");
  std::vector<detail::Tap<Scalar>> xt(w), yt(h);
  for (int xp = 0; xp < w; ++xp) xt[xp] = detail::make_tap(sample_coordinate(am.x_map, xp), src.width());
  for (int yp = 0; yp < h; ++yp) yt[yp] = detail::make_tap(sample_coordinate(am.y_map, yp), src.height());
  return detail::sample_separable(src, xt, yt);
}

/// Standard bilinear resize of the whole image, pixel-center aligned, no prefilter.
template <typename Scalar>
Image<Scalar> uniform_resize(const Image<Scalar>& src, int w, int h) {
  if (src.empty()) throw InvalidArgument("uniform_resize: empty source image");
  if (w <= 0 || h <= 0) throw InvalidArgument("uniform_resize: target extent must be positive");
  const Scalar sx = Scalar(src.width()) / w;
  const Scalar sy = Scalar(src.height()) / h;
  std::vector<detail::Tap<Scalar>> xt(w), yt(h);
  for (int xp = 0; xp < w; ++xp) {
    xt[xp] = detail::make_tap((xp + Scalar(0.5)) * sx - Scalar(0.5), src.width());
  }
  for (int yp = 0; yp < h; ++yp) {
    yt[yp] = detail::make_tap((yp + Scalar(0.5)) * sy - Scalar(0.5), src.height());
  }
  return detail::sample_separable(src, xt, yt);
}

}  // namespace qpzoom

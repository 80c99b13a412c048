#pragma once

#include <cmath>
#include <utility>

#include "qpzoom/errors.hpp"
#include "qpzoom/geometry.hpp"
#include "qpzoom/warp_grid.hpp"

namespace qpzoom {

template <typename Scalar = double>
struct Point {
  Scalar x{0};
  Scalar y{0};
  friend bool operator==(const Point&, const Point&) = default;
};

namespace detail {

template <typename Scalar>
void check_domain(Scalar x, Scalar y, Scalar xmax, Scalar ymax, const char* what) {
  if (!(x >= 0 && x <= xmax && y >= 0 && y <= ymax)) throw OutOfDomain(what);
}

}  // namespace detail

/// Crop coordinates -> patch coordinates (inverse of the axis map).
template <typename Scalar>
Point<Scalar> map_point_forward(Scalar x, Scalar y, const AxisMap<Scalar>& am) {
  detail::check_domain(x, y, am.W(), am.H(), "map_point_forward: point outside the source crop");
  return {am.x_map.inverse(x), am.y_map.inverse(y)};
}

/// Patch coordinates -> crop coordinates.
template <typename Scalar>
Point<Scalar> map_point_reverse(Scalar xp, Scalar yp, const AxisMap<Scalar>& am) {
  detail::check_domain(xp, yp, am.w(), am.h(), "map_point_reverse: point outside the target patch");
  return {am.x_map(xp), am.y_map(yp)};
}

// Boxes map through their top-left and bottom-right corners; the separable
// map keeps them axis-aligned. Zero-extent boxes are allowed here.

template <typename Scalar>
Box<Scalar> map_box_forward(const Box<Scalar>& b, const AxisMap<Scalar>& am) {
  const auto tl = map_point_forward(b.x0(), b.y0(), am);
  const auto br = map_point_forward(b.x1(), b.y1(), am);
  return Box<Scalar>::from_corners(tl.x, tl.y, br.x, br.y);
}

template <typename Scalar>
Box<Scalar> map_box_reverse(const Box<Scalar>& b, const AxisMap<Scalar>& am) {
  const auto tl = map_point_reverse(b.x0(), b.y0(), am);
  const auto br = map_point_reverse(b.x1(), b.y1(), am);
  return Box<Scalar>::from_corners(tl.x, tl.y, br.x, br.y);
}

}  // namespace qpzoom

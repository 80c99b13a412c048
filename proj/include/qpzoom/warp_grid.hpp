#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qpzoom/errors.hpp"
#include "qpzoom/qp.hpp"

namespace qpzoom {

/// Axis-aligned control grid: grid point (j, i) sits at (xs[i], ys[j]) in the
/// source crop. xs has n+1 entries from 0 to W, ys has m+1 entries from 0 to H.
template <typename Scalar = double>
struct ControlGrid {
  std::vector<Scalar> xs;
  std::vector<Scalar> ys;

  int n() const { return static_cast<int>(xs.size()) - 1; }
  int m() const { return static_cast<int>(ys.size()) - 1; }
  Scalar W() const { return xs.back(); }
  Scalar H() const { return ys.back(); }
};

namespace detail {

template <typename Scalar>
std::vector<Scalar> prefix_sums(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& d, Scalar total,
                                std::size_t index_offset) {
  std::vector<Scalar> out(static_cast<std::size_t>(d.size()) + 1);
  out[0] = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) out[i + 1] = out[i] + d(i);
  // Absorb float drift into the last interval.
  out.back() = total;
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) {
      throw DegenerateDeformation("control grid is not strictly increasing at knot " + std::to_string(i),
                                  index_offset + i - 1);
    }
  }
  return out;
}

template <typename Scalar>
std::vector<Scalar> uniform_knots(int count, Scalar extent) {
  std::vector<Scalar> knots(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i < count; ++i) knots[i] = Scalar(i) * extent / count;
  knots[count] = extent;
  return knots;
}

}  // namespace detail

template <typename Scalar>
ControlGrid<Scalar> control_grid(const Intervals<Scalar>& d, Scalar W, Scalar H) {
  if (d.d_row.size() < 1 || d.d_col.size() < 1) throw InvalidArgument("control_grid: empty intervals");
  const Scalar sum_col = d.d_col.sum();
  const Scalar sum_row = d.d_row.sum();
  if (std::abs(sum_col - W) > Scalar(1e-9) * W || std::abs(sum_row - H) > Scalar(1e-9) * H) {
    throw InvalidArgument("control_grid: intervals do not sum to the crop extent");
  }
  ControlGrid<Scalar> g;
  g.ys = detail::prefix_sums(d.d_row, H, 0);
  g.xs = detail::prefix_sums(d.d_col, W, static_cast<std::size_t>(d.d_row.size()));
  return g;
}

/// Strictly increasing piecewise-linear function through (knots[i], values[i]).
/// Evaluation at a knot returns the stored value bit-exactly, in both directions.
template <typename Scalar = double>
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<Scalar> knots, std::vector<Scalar> values)
      : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.size() < 2 || knots_.size() != values_.size()) {
      throw InvalidArgument("piecewise-linear map needs matching knot and value lists of size >= 2");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      if (!(knots_[i] > knots_[i - 1]) || !(values_[i] > values_[i - 1])) {
        throw InvalidArgument("piecewise-linear map must be strictly increasing");
      }
    }
  }

  Scalar operator()(Scalar t) const { return interpolate(knots_, values_, t); }
  Scalar inverse(Scalar s) const { return interpolate(values_, knots_, s); }

  const std::vector<Scalar>& knots() const { return knots_; }
  const std::vector<Scalar>& values() const { return values_; }
  Scalar domain_max() const { return knots_.back(); }
  Scalar range_max() const { return values_.back(); }

 private:
  // Clamps outside [from.front(), from.back()].
  static Scalar interpolate(const std::vector<Scalar>& from, const std::vector<Scalar>& to, Scalar t) {
    if (t <= from.front()) return to.front();
    if (t >= from.back()) return to.back();
    const auto it = std::upper_bound(from.begin(), from.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - from.begin()) - 1;
    if (t == from[i]) return to[i];
    const Scalar a = (t - from[i]) / (from[i + 1] - from[i]);
    return to[i] + a * (to[i + 1] - to[i]);
  }

  std::vector<Scalar> knots_;
  std::vector<Scalar> values_;
};

/// Separable sampling map from the w x h target patch to the W x H source
/// crop. x_map sends target abscissa i*w/n to xs[i]; y_map likewise.
template <typename Scalar = double>
struct AxisMap {
  PiecewiseLinear<Scalar> x_map;
  PiecewiseLinear<Scalar> y_map;

  Scalar w() const { return x_map.domain_max(); }
  Scalar h() const { return y_map.domain_max(); }
  Scalar W() const { return x_map.range_max(); }
  Scalar H() const { return y_map.range_max(); }

  ControlGrid<Scalar> grid() const { return {x_map.values(), y_map.values()}; }
};

template <typename Scalar>
AxisMap<Scalar> axis_maps(const ControlGrid<Scalar>& g, Scalar w, Scalar h) {
  if (!(w > 0 && h > 0)) throw InvalidArgument("axis_maps: target extent must be positive");
  if (g.xs.size() < 2 || g.ys.size() < 2) throw InvalidArgument("axis_maps: control grid too small");
  return {PiecewiseLinear<Scalar>(detail::uniform_knots(g.n(), w), g.xs),
          PiecewiseLinear<Scalar>(detail::uniform_knots(g.m(), h), g.ys)};
}

template <typename Scalar>
AxisMap<Scalar> uniform_axis_map(Scalar W, Scalar H, Scalar w, Scalar h, int m = 16, int n = 16) {
  ControlGrid<Scalar> g{detail::uniform_knots(n, W), detail::uniform_knots(m, H)};
  return axis_maps(g, w, h);
}

/// Materialized per-pixel source locations (pixel-center convention).
template <typename Scalar = double>
struct DenseGrid {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Matrix x;  ///< h x w
  Matrix y;  ///< h x w
};

/// Source sample coordinate for target pixel index t along one axis.
template <typename Scalar>
Scalar sample_coordinate(const PiecewiseLinear<Scalar>& map, int t) {
  return map(Scalar(t) + Scalar(0.5)) - Scalar(0.5);
}

template <typename Scalar>
DenseGrid<Scalar> dense_grid(const AxisMap<Scalar>& am) {
  const int w = static_cast<int>(std::lround(am.w()));
  const int h = static_cast<int>(std::lround(am.h()));
  DenseGrid<Scalar> g;
  g.x.resize(h, w);
  g.y.resize(h, w);
  for (int yp = 0; yp < h; ++yp) {
    const Scalar sy = sample_coordinate(am.y_map, yp);
    for (int xp = 0; xp < w; ++xp) {
      g.x(yp, xp) = sample_coordinate(am.x_map, xp);
      g.y(yp, xp) = sy;
    }
  }
  return g;
}

}  // namespace qpzoom

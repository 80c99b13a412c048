#pragma once

#include <Eigen/Core>
#include <cmath>

#include "qpzoom/errors.hpp"
#include "qpzoom/geometry.hpp"

namespace qpzoom {

/// Axis-aligned Gaussian centered on the temporal prior, plus the score floor.
template <typename Scalar = double>
struct ImportanceParams {
  Scalar mu_x{0};
  Scalar mu_y{0};
  Scalar sigma_x{1};
  Scalar sigma_y{1};
  Scalar beta{64};
  Scalar epsilon{Scalar(1e-2)};

  /// sigma = sqrt(beta * extent) per axis.
  static ImportanceParams from_prior(const Box<Scalar>& r, Scalar beta, Scalar epsilon) {
    if (!(r.w > 0 && r.h > 0) || !std::isfinite(r.w) || !std::isfinite(r.h)) {
      throw InvalidArgument("importance: degenerate prior box");
    }
    if (!(beta > 0) || !std::isfinite(beta)) throw InvalidArgument("importance: beta must be positive");
    if (!(epsilon > 0) || !std::isfinite(epsilon)) {
      throw InvalidArgument("importance: epsilon must be positive");
    }
    return {r.cx, r.cy, std::sqrt(beta * r.w), std::sqrt(beta * r.h), beta, epsilon};
  }
};

template <typename Scalar>
Scalar gaussian_value(const ImportanceParams<Scalar>& p, Scalar x, Scalar y) {
  const Scalar u = (x - p.mu_x) / p.sigma_x;
  const Scalar v = (y - p.mu_y) / p.sigma_y;
  return std::exp(Scalar(-0.5) * (u * u + v * v));
}

/// Patch importance scores. `scores(l, k)` is the score of the patch in
/// row l (0..m-1) and column k (0..n-1).
template <typename Scalar = double>
struct ScoreGrid {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix scores;

  Eigen::Index m() const { return scores.rows(); }
  Eigen::Index n() const { return scores.cols(); }
};

/// Scores are sampled at the patch centers of the uniform grid, so they do not
/// depend on the intervals being solved for.
template <typename Scalar>
ScoreGrid<Scalar> score_grid(const Box<Scalar>& r, Scalar W, Scalar H, int m, int n, Scalar beta,
                             Scalar epsilon) {
  if (m < 2 || n < 2) throw InvalidArgument("score_grid: grid needs at least 2 patches per axis");
  if (!(W > 0 && H > 0) || !std::isfinite(W) || !std::isfinite(H)) {
    throw InvalidArgument("score_grid: crop extent must be positive");
  }
  const auto p = ImportanceParams<Scalar>::from_prior(r, beta, epsilon);
  if (!(r.cx >= 0 && r.cx <= W && r.cy >= 0 && r.cy <= H)) {
    throw InvalidArgument("score_grid: prior center must lie inside the crop");
  }

  // The Gaussian is separable, so evaluate one factor per row and per column.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> gy(m);
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> gx(n);
  for (int l = 0; l < m; ++l) {
    const Scalar v = ((l + Scalar(0.5)) * H / m - p.mu_y) / p.sigma_y;
    gy(l) = v * v;
  }
  for (int k = 0; k < n; ++k) {
    const Scalar u = ((k + Scalar(0.5)) * W / n - p.mu_x) / p.sigma_x;
    gx(k) = u * u;
  }
  ScoreGrid<Scalar> S;
  S.scores.resize(m, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < m; ++l) {
      S.scores(l, k) = std::exp(Scalar(-0.5) * (gx(k) + gy(l))) + epsilon;
    }
  }
  return S;
}

}  // namespace qpzoom

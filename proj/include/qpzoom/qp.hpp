#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <string>

#include "qpzoom/errors.hpp"
#include "qpzoom/importance.hpp"

namespace qpzoom {

template <typename Scalar = double>
struct ZoomParams {
  Scalar gamma{Scalar(1.5)};  ///< target linear magnification of the important area
  Scalar lambda{1};           ///< weight of the rigid (aspect-ratio) energy

  void validate() const {
    if (!std::isfinite(gamma) || gamma < 1) throw InvalidArgument("zoom factor gamma must be finite and >= 1");
    if (!std::isfinite(lambda) || lambda < 0) throw InvalidArgument("balance weight lambda must be finite and >= 0");
  }
};

/// Grid point intervals: d_row(l) is the height of patch row l, d_col(k) the
/// width of patch column k, both in source pixels.
template <typename Scalar = double>
struct Intervals {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector d_row;
  Vector d_col;

  static Intervals uniform(int m, int n, Scalar W, Scalar H) {
    return {Vector::Constant(m, H / m), Vector::Constant(n, W / n)};
  }

  /// (d_row, d_col) stacked in that order.
  Vector stacked() const {
    Vector d(d_row.size() + d_col.size());
    d << d_row, d_col;
    return d;
  }

  static Intervals split(const Vector& d, Eigen::Index m) {
    return {d.head(m), d.tail(d.size() - m)};
  }
};

/// minimize 1/2 d'Pd + q'd  subject to  A d = b_eq, with d = (d_row, d_col).
/// `constant` is the term dropped from the energy, so that
/// 1/2 d'Pd + q'd + constant equals E_zoom + lambda * E_rigid.
template <typename Scalar = double>
struct QPProblem {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix P;
  Vector q;
  Eigen::Matrix<Scalar, 2, Eigen::Dynamic> A;
  Eigen::Matrix<Scalar, 2, 1> b_eq;
  Scalar constant{0};
  Eigen::Index m = 0;
  Eigen::Index n = 0;

  Scalar objective(const Vector& d) const { return Scalar(0.5) * d.dot(P * d) + q.dot(d); }
};

/// Literal evaluation of the zoom and rigid energies (no matrix form).
template <typename Scalar>
std::pair<Scalar, Scalar> energy(const Intervals<Scalar>& d, const ScoreGrid<Scalar>& S, Scalar W,
                                 Scalar H, const ZoomParams<Scalar>& zp) {
  const Eigen::Index m = S.m();
  const Eigen::Index n = S.n();
  if (d.d_row.size() != m || d.d_col.size() != n) throw InvalidArgument("energy: dimension mismatch");
  const Scalar row_target = H / (zp.gamma * m);
  const Scalar col_target = W / (zp.gamma * n);
  Scalar e_zoom = 0;
  Scalar e_rigid = 0;
  for (Eigen::Index l = 0; l < m; ++l) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Scalar s2 = S.scores(l, k) * S.scores(l, k);
      const Scalar dr = d.d_row(l) - row_target;
      const Scalar dc = d.d_col(k) - col_target;
      const Scalar stretch = Scalar(m) / H * d.d_row(l) - Scalar(n) / W * d.d_col(k);
      e_zoom += s2 * (dr * dr + dc * dc);
      e_rigid += s2 * stretch * stretch;
    }
  }
  return {e_zoom, e_rigid};
}

/// Build P, q, A, b_eq from the score grid.
///
/// With row sums Srow(l) = sum_k S(l,k)^2 and column sums Scol(k) = sum_l S(l,k)^2:
///   P(l,l)       =  2 Srow(l) (lambda (m/H)^2 + 1)
///   P(m+k,m+k)   =  2 Scol(k) (lambda (n/W)^2 + 1)
///   P(l,m+k)     = -2 lambda S(l,k)^2 mn / (HW)   (and its transpose)
///   q(l)         = -2 Srow(l) H / (gamma m)
///   q(m+k)       = -2 Scol(k) W / (gamma n)
/// and A holds one indicator row per axis with b_eq = (H, W).
template <typename Scalar>
QPProblem<Scalar> assemble(const ScoreGrid<Scalar>& S, Scalar W, Scalar H,
                           const ZoomParams<Scalar>& zp) {
  zp.validate();
  if (!(W > 0 && H > 0) || !std::isfinite(W) || !std::isfinite(H)) {
    throw InvalidArgument("assemble: crop extent must be positive");
  }
  const Eigen::Index m = S.m();
  const Eigen::Index n = S.n();
  if (m < 1 || n < 1) throw InvalidArgument("assemble: empty score grid");
  if (!(S.scores.array() > 0).all() || !S.scores.allFinite()) {
    throw InvalidArgument("assemble: scores must be finite and positive");
  }
  const Eigen::Index N = m + n;
  const auto S2 = S.scores.array().square().matrix();
  const auto s_row = S2.rowwise().sum().eval();
  const auto s_col = S2.colwise().sum().transpose().eval();

  const Scalar row_scale = Scalar(m) / H;
  const Scalar col_scale = Scalar(n) / W;
  const Scalar lambda = zp.lambda;

  QPProblem<Scalar> qp;
  qp.m = m;
  qp.n = n;
  qp.P.setZero(N, N);
  qp.P.diagonal().head(m) = 2 * (lambda * row_scale * row_scale + 1) * s_row;
  qp.P.diagonal().tail(n) = 2 * (lambda * col_scale * col_scale + 1) * s_col;
  qp.P.topRightCorner(m, n) = (-2 * lambda * row_scale * col_scale) * S2;
  qp.P.bottomLeftCorner(n, m) = qp.P.topRightCorner(m, n).transpose();

  const Scalar row_target = H / (zp.gamma * m);
  const Scalar col_target = W / (zp.gamma * n);
  qp.q.resize(N);
  qp.q.head(m) = -2 * row_target * s_row;
  qp.q.tail(n) = -2 * col_target * s_col;
  qp.constant = S2.sum() * (row_target * row_target + col_target * col_target);

  qp.A.setZero(2, N);
  qp.A.row(0).head(m).setOnes();
  qp.A.row(1).tail(n).setOnes();
  qp.b_eq << H, W;
  return qp;
}

/// KKT residuals of a candidate (d, nu).
template <typename Scalar>
struct KktResidual {
  Scalar stationarity;  ///< ||P d + q + A' nu||_inf
  Scalar feasibility;   ///< ||A d - b_eq||_inf
};

template <typename Scalar>
KktResidual<Scalar> kkt_residual(const QPProblem<Scalar>& p,
                                 const typename QPProblem<Scalar>::Vector& d,
                                 const Eigen::Matrix<Scalar, 2, 1>& nu) {
  return {(p.P * d + p.q + p.A.transpose() * nu).template lpNorm<Eigen::Infinity>(),
          (p.A * d - p.b_eq).template lpNorm<Eigen::Infinity>()};
}

template <typename Scalar = double>
struct QPSolution {
  Intervals<Scalar> intervals;
  Eigen::Matrix<Scalar, 2, 1> multipliers;
  KktResidual<Scalar> residual;
};

/// Solves the equality-constrained QP through the Schur complement of the
/// positive definite P block, followed by one step of iterative refinement on
/// the full KKT system. Does not check interval positivity.
template <typename Scalar>
QPSolution<Scalar> solve_kkt(const QPProblem<Scalar>& p) {
  using Vector = typename QPProblem<Scalar>::Vector;
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
  const Eigen::Index N = p.m + p.n;
  if (p.P.rows() != N || p.P.cols() != N || p.q.size() != N || p.A.cols() != N) {
    throw InvalidArgument("solve: QP dimensions are inconsistent");
  }

  const Eigen::LLT<typename QPProblem<Scalar>::Matrix> llt(p.P);
  if (llt.info() != Eigen::Success) throw SolverFailure("solve: P is not positive definite");
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 2> PinvAt = llt.solve(p.A.transpose());
  const Eigen::Matrix<Scalar, 2, 2> schur = p.A * PinvAt;
  const Eigen::LDLT<Eigen::Matrix<Scalar, 2, 2>> schur_ldlt(schur);
  if (schur_ldlt.info() != Eigen::Success || !(schur_ldlt.vectorD().array() > 0).all()) {
    throw SolverFailure("solve: constraint Schur complement is singular");
  }

  // [P A'; A 0] [x; y] = [r1; r2]
  auto kkt_solve = [&](const Vector& r1, const Vec2& r2, Vector& x, Vec2& y) {
    const Vector Pinv_r1 = llt.solve(r1);
    y = schur_ldlt.solve(p.A * Pinv_r1 - r2);
    x = Pinv_r1 - PinvAt * y;
  };

  Vector d;
  Vec2 nu;
  kkt_solve(-p.q, p.b_eq, d, nu);

  Vector dx;
  Vec2 dy;
  const Vector r1 = -p.q - p.P * d - p.A.transpose() * nu;
  const Vec2 r2 = p.b_eq - p.A * d;
  kkt_solve(r1, r2, dx, dy);
  d += dx;
  nu += dy;

  if (!d.allFinite() || !nu.allFinite()) throw SolverFailure("solve: non-finite KKT solution");
  const auto res = kkt_residual(p, d, nu);
  const Scalar q_scale = 1 + p.q.template lpNorm<Eigen::Infinity>();
  const Scalar b_scale = 1 + p.b_eq.template lpNorm<Eigen::Infinity>();
  if (res.stationarity > Scalar(1e-8) * q_scale || res.feasibility > Scalar(1e-9) * b_scale) {
    throw SolverFailure("solve: KKT residual above tolerance; system is numerically singular");
  }
  return {Intervals<Scalar>::split(d, p.m), nu, res};
}

/// Unique minimizer of the grid QP. Throws DegenerateDeformation if any
/// interval comes out non-positive.
template <typename Scalar>
Intervals<Scalar> solve(const QPProblem<Scalar>& p) {
  QPSolution<Scalar> sol = solve_kkt(p);
  const auto& d = sol.intervals;
  for (Eigen::Index l = 0; l < d.d_row.size(); ++l) {
    if (!(d.d_row(l) > 0)) {
      throw DegenerateDeformation("solve: non-positive row interval " + std::to_string(l),
                                  static_cast<std::size_t>(l));
    }
  }
  for (Eigen::Index k = 0; k < d.d_col.size(); ++k) {
    if (!(d.d_col(k) > 0)) {
      throw DegenerateDeformation("solve: non-positive column interval " + std::to_string(k),
                                  static_cast<std::size_t>(p.m + k));
    }
  }
  return std::move(sol.intervals);
}

}  // namespace qpzoom

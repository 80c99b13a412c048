#pragma once

#include <optional>
#include <random>
#include <span>
#include <utility>

#include "qpzoom/coord_map.hpp"
#include "qpzoom/geometry.hpp"
#include "qpzoom/importance.hpp"
#include "qpzoom/qp.hpp"
#include "qpzoom/resample.hpp"
#include "qpzoom/warp_grid.hpp"

namespace qpzoom {

struct HyperParams {
  int search_size = 256;  ///< output patch is search_size x search_size
  double context_factor = 5.0;
  ContextMode context_mode = ContextMode::PerAxis;
  int grid = 16;  ///< m = n
  double beta = 64.0;
  double gamma = 1.5;
  double lambda = 1.0;
  double epsilon = 1e-2;
  double jitter_small = 0.1;
  double jitter_large = 0.5;
  double jitter_small_prob = 0.8;
  double pad_value = 0.0;

  void validate() const;
  ZoomParams<double> zoom() const { return {gamma, lambda}; }
};

enum class ResizeMode { Uniform, Zoom };

struct ResizeResult {
  Imaged patch;
  AxisMap<double> axis_map;
  Boxd prior_on_crop;
  std::pair<int, int> crop_origin;       ///< frame pixel of crop pixel (0, 0)
  std::pair<double, double> crop_extent;  ///< real-valued (W, H)
  bool fell_back_to_uniform = false;     ///< QP produced a degenerate grid
};

struct AxisMapResult {
  AxisMap<double> axis_map;
  bool fell_back_to_uniform = false;
};

/// Solve the QP and turn it into a w x h axis map; a degenerate solution
/// falls back to the uniform map with the same grid resolution.
AxisMapResult axis_map_from_qp(const QPProblem<double>& qp, double w, double h);

/// Score -> assemble -> solve -> grid -> axis maps for a prior on a W x H crop.
/// Degenerate solutions fall back to the uniform map. gamma == 1 yields the
/// uniform map directly, which is the exact minimizer in that case.
AxisMapResult build_axis_map(const Boxd& prior_on_crop, double W, double H, const HyperParams& hp,
                             ResizeMode mode = ResizeMode::Zoom);

/// Test-time search patch from the previous-frame box.
ResizeResult make_search_patch(const Imaged& frame, const Boxd& prev_box, const HyperParams& hp,
                               ResizeMode mode = ResizeMode::Zoom);

/// Train-time prior extent: (exp(Jw) * gt_w, exp(Jh) * gt_h) with
/// Jw, Jh ~ N(0, j^2) and j = jitter_small with probability jitter_small_prob,
/// jitter_large otherwise.
std::pair<double, double> jitter_prior(double gt_w, double gt_h, const HyperParams& hp,
                                       std::mt19937_64& rng);

struct TargetRecord {
  Boxd gt;
  Boxd prior;
  int frame_w = 0;
  int frame_h = 0;
};

struct TargetSizeStats {
  double avg = 0;  ///< mean mapped gt area, patch pixels^2
  double std = 0;  ///< population standard deviation of the same
  std::size_t count = 0;
  std::size_t skipped = 0;  ///< records whose gt is not visible in the crop
};

/// Mapped ground-truth area statistics over a sequence of (gt, prior) records.
TargetSizeStats target_size_stats(std::span<const TargetRecord> records, const HyperParams& hp,
                                  ResizeMode mode);

/// Area of gt on the resized patch, or nothing if gt is not visible in the crop.
std::optional<double> mapped_target_area(const TargetRecord& record, const HyperParams& hp,
                                         ResizeMode mode);

}  // namespace qpzoom

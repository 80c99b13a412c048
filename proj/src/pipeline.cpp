#include "qpzoom/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace qpzoom {

void HyperParams::validate() const {
  if (search_size <= 0) throw InvalidArgument("search size must be positive");
  if (!std::isfinite(context_factor) || context_factor < 1) throw InvalidArgument("context factor must be >= 1");
  if (grid < 2) throw InvalidArgument("grid must have at least 2 patches per axis");
  if (!std::isfinite(beta) || beta <= 0) throw InvalidArgument("beta must be positive");
  if (!std::isfinite(epsilon) || epsilon <= 0) throw InvalidArgument("epsilon must be positive");
  zoom().validate();
  if (!(jitter_small >= 0) || !(jitter_large >= 0)) throw InvalidArgument("jitter must be non-negative");
  if (!(jitter_small_prob >= 0 && jitter_small_prob <= 1)) {
    throw InvalidArgument("jitter probability must lie in [0, 1]");
  }
  if (!(pad_value >= 0 && pad_value <= 1)) throw InvalidArgument("pad value must lie in [0, 1]");
}

AxisMapResult axis_map_from_qp(const QPProblem<double>& qp, double w, double h) {
  const double H = qp.b_eq(0);
  const double W = qp.b_eq(1);
  try {
    const auto d = solve(qp);
    return {axis_maps(control_grid(d, W, H), w, h), false};
  } catch (const DegenerateDeformation&) {
    return {uniform_axis_map(W, H, w, h, static_cast<int>(qp.m), static_cast<int>(qp.n)), true};
  }
}

AxisMapResult build_axis_map(const Boxd& prior_on_crop, double W, double H, const HyperParams& hp,
                             ResizeMode mode) {
  hp.validate();
  const double w = hp.search_size;
  const double h = hp.search_size;
  if (mode == ResizeMode::Uniform || hp.gamma == 1.0) {
    return {uniform_axis_map(W, H, w, h, hp.grid, hp.grid), false};
  }
  // The Gaussian center must lie in the importance domain.
  Boxd r = prior_on_crop;
  r.cx = std::clamp(r.cx, 0.0, W);
  r.cy = std::clamp(r.cy, 0.0, H);

  const auto S = score_grid(r, W, H, hp.grid, hp.grid, hp.beta, hp.epsilon);
  return axis_map_from_qp(assemble(S, W, H, hp.zoom()), w, h);
}

ResizeResult make_search_patch(const Imaged& frame, const Boxd& prev_box, const HyperParams& hp,
                               ResizeMode mode) {
  hp.validate();
  if (frame.empty()) throw InvalidArgument("make_search_patch: empty frame");
  if (!prev_box.valid()) throw InvalidArgument("make_search_patch: invalid previous box");
  if (prev_box.x1() <= 0 || prev_box.y1() <= 0 || prev_box.x0() >= frame.width() ||
      prev_box.y0() >= frame.height()) {
    throw InvalidArgument("make_search_patch: previous box does not overlap the frame");
  }
  const auto [W, H] = crop_size(prev_box, hp.context_factor, hp.context_mode);
  auto cropped = crop_image(frame, prev_box, W, H, hp.pad_value);
  auto built = build_axis_map(cropped.r, W, H, hp, mode);

  ResizeResult out;
  out.patch = warp(cropped.crop, built.axis_map);
  out.axis_map = std::move(built.axis_map);
  out.prior_on_crop = cropped.r;
  out.crop_origin = {cropped.window.x0, cropped.window.y0};
  out.crop_extent = {W, H};
  out.fell_back_to_uniform = built.fell_back_to_uniform;
  return out;
}

std::pair<double, double> jitter_prior(double gt_w, double gt_h, const HyperParams& hp,
                                       std::mt19937_64& rng) {
  if (!(gt_w > 0 && gt_h > 0) || !std::isfinite(gt_w) || !std::isfinite(gt_h)) {
    throw InvalidArgument("jitter_prior: ground-truth extent must be positive");
  }
  std::bernoulli_distribution small(hp.jitter_small_prob);
  const double j = small(rng) ? hp.jitter_small : hp.jitter_large;
  if (j == 0) return {gt_w, gt_h};
  std::normal_distribution<double> normal(0.0, j);
  const double jw = normal(rng);
  const double jh = normal(rng);
  return {std::exp(jw) * gt_w, std::exp(jh) * gt_h};
}

std::optional<double> mapped_target_area(const TargetRecord& record, const HyperParams& hp,
                                         ResizeMode mode) {
  if (!record.prior.valid()) throw InvalidArgument("target record: invalid prior box");
  if (!(record.gt.w >= 0 && record.gt.h >= 0) || !std::isfinite(record.gt.cx) ||
      !std::isfinite(record.gt.cy)) {
    throw InvalidArgument("target record: invalid ground-truth box");
  }
  const auto [W, H] = crop_size(record.prior, hp.context_factor, hp.context_mode);
  const auto win = crop_window(record.prior, W, H);
  const auto built = build_axis_map(win.to_crop(record.prior), W, H, hp, mode);

  // Visible part of gt: inside both the crop and, when given, the frame.
  double x0 = std::max(record.gt.x0() - win.x0, 0.0);
  double y0 = std::max(record.gt.y0() - win.y0, 0.0);
  double x1 = std::min(record.gt.x1() - win.x0, W);
  double y1 = std::min(record.gt.y1() - win.y0, H);
  if (record.frame_w > 0 && record.frame_h > 0) {
    x0 = std::max(x0, -double(win.x0));
    y0 = std::max(y0, -double(win.y0));
    x1 = std::min(x1, double(record.frame_w - win.x0));
    y1 = std::min(y1, double(record.frame_h - win.y0));
  }
  if (!(x1 > x0 && y1 > y0)) return std::nullopt;
  const auto mapped = map_box_forward(Boxd::from_corners(x0, y0, x1, y1), built.axis_map);
  return mapped.area();
}

TargetSizeStats target_size_stats(std::span<const TargetRecord> records, const HyperParams& hp,
                                  ResizeMode mode) {
  if (records.empty()) throw InvalidArgument("empty sequence");
  std::vector<double> areas;
  areas.reserve(records.size());
  TargetSizeStats stats;
  for (const auto& rec : records) {
    if (auto a = mapped_target_area(rec, hp, mode)) {
      areas.push_back(*a);
    } else {
      ++stats.skipped;
    }
  }
  stats.count = areas.size();
  if (areas.empty()) return stats;
  double sum = 0;
  for (double a : areas) sum += a;
  stats.avg = sum / areas.size();
  double ss = 0;
  for (double a : areas) ss += (a - stats.avg) * (a - stats.avg);
  stats.std = std::sqrt(ss / areas.size());
  return stats;
}

}  // namespace qpzoom

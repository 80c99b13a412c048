#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qpzoom/errors.hpp"

namespace qpzoom {

/// Axis-aligned rectangle in center form. Pixel (i, j) covers [i, i+1) x [j, j+1).
template <typename Scalar = double>
struct Box {
  Scalar cx{0};
  Scalar cy{0};
  Scalar w{0};
  Scalar h{0};

  Scalar x0() const { return cx - w / 2; }
  Scalar y0() const { return cy - h / 2; }
  Scalar x1() const { return cx + w / 2; }
  Scalar y1() const { return cy + h / 2; }
  Scalar area() const { return w * h; }

  static Box from_corners(Scalar x0, Scalar y0, Scalar x1, Scalar y1) {
    return Box{(x0 + x1) / 2, (y0 + y1) / 2, x1 - x0, y1 - y0};
  }

  bool valid() const {
    return std::isfinite(cx) && std::isfinite(cy) && std::isfinite(w) &&
           std::isfinite(h) && w > 0 && h > 0;
  }

  friend bool operator==(const Box&, const Box&) = default;
};

using Boxd = Box<double>;

/// Unit context amount used by crop_size.
enum class ContextMode {
  PerAxis,  ///< c_w = b.w, c_h = b.h
  Mean,     ///< c_w = c_h = (b.w + b.h) / 2
};

/// Row-major, channel-interleaved image with samples in [0, 1].
template <typename Scalar = double>
class Image {
 public:
  Image() = default;

  Image(int width, int height, int channels, Scalar fill = Scalar(0))
      : width_(width), height_(height), channels_(channels) {
    check_shape();
    check_sample(fill);
    data_.assign(size(), fill);
  }

  Image(int width, int height, int channels, std::vector<Scalar> data)
      : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    check_shape();
    if (data_.size() != size()) {
      throw InvalidArgument("image data length does not match width*height*channels");
    }
    for (Scalar v : data_) check_sample(v);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const {
    return static_cast<std::size_t>(width_) * height_ * channels_;
  }

  Scalar operator()(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }
  Scalar& operator()(int x, int y, int c = 0) { return data_[index(x, y, c)]; }

  const std::vector<Scalar>& data() const { return data_; }
  std::vector<Scalar>& data() { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }
  void check_shape() const {
    if (width_ <= 0 || height_ <= 0) throw InvalidArgument("image extent must be positive");
    if (channels_ != 1 && channels_ != 3) throw InvalidArgument("image must have 1 or 3 channels");
  }
  static void check_sample(Scalar v) {
    if (!(v >= 0 && v <= 1)) throw InvalidArgument("image samples must lie in [0, 1]");
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<Scalar> data_;
};

using Imaged = Image<double>;

/// Square crop side from a reference box and context factor.
template <typename Scalar>
std::pair<Scalar, Scalar> crop_size(const Box<Scalar>& b, Scalar context_factor,
                                    ContextMode mode = ContextMode::PerAxis) {
  if (!b.valid()) throw InvalidArgument("crop_size: reference box must be finite with w, h > 0");
  if (!std::isfinite(context_factor) || context_factor < 1) {
    throw InvalidArgument("crop_size: context factor must be finite and >= 1");
  }
  Scalar cw = b.w;
  Scalar ch = b.h;
  if (mode == ContextMode::Mean) cw = ch = (b.w + b.h) / 2;
  const Scalar side =
      std::sqrt((b.w + (context_factor - 1) * cw) * (b.h + (context_factor - 1) * ch));
  return {side, side};
}

/// Placement of a W x H crop in frame coordinates.
template <typename Scalar = double>
struct CropWindow {
  int x0 = 0;  ///< frame column of crop pixel 0
  int y0 = 0;  ///< frame row of crop pixel 0
  int buffer_w = 0;
  int buffer_h = 0;
  Scalar W{0};  ///< real-valued extent carried into the QP
  Scalar H{0};

  /// Frame box expressed in crop coordinates.
  Box<Scalar> to_crop(const Box<Scalar>& b) const {
    return Box<Scalar>{b.cx - x0, b.cy - y0, b.w, b.h};
  }
  Box<Scalar> to_frame(const Box<Scalar>& b) const {
    return Box<Scalar>{b.cx + x0, b.cy + y0, b.w, b.h};
  }
};

/// Crop origin is rounded to the nearest integer pixel; the buffer is ceil(W) x ceil(H).
template <typename Scalar>
CropWindow<Scalar> crop_window(const Box<Scalar>& b, Scalar W, Scalar H) {
  if (!(std::isfinite(W) && std::isfinite(H) && W > 0 && H > 0)) {
    throw InvalidArgument("crop extent must be finite and positive");
  }
  if (!(std::isfinite(b.cx) && std::isfinite(b.cy))) {
    throw InvalidArgument("crop center must be finite");
  }
  CropWindow<Scalar> win;
  win.x0 = static_cast<int>(std::floor(b.cx - W / 2 + Scalar(0.5)));
  win.y0 = static_cast<int>(std::floor(b.cy - H / 2 + Scalar(0.5)));
  win.buffer_w = static_cast<int>(std::ceil(W));
  win.buffer_h = static_cast<int>(std::ceil(H));
  win.W = W;
  win.H = H;
  return win;
}

template <typename Scalar>
struct CropResult {
  Image<Scalar> crop;
  Box<Scalar> r;  ///< reference box in crop coordinates
  CropWindow<Scalar> window;
};

/// Crop a W x H region centered on b; pixels outside the image take pad_value.
template <typename Scalar>
CropResult<Scalar> crop_image(const Image<Scalar>& img, const Box<Scalar>& b, Scalar W,
                              Scalar H, Scalar pad_value = Scalar(0)) {
  if (img.empty()) throw InvalidArgument("crop_image: empty image");
  const CropWindow<Scalar> win = crop_window(b, W, H);
  Image<Scalar> out(win.buffer_w, win.buffer_h, img.channels(), pad_value);
  const int ch = img.channels();
  for (int y = 0; y < win.buffer_h; ++y) {
    const int sy = y + win.y0;
    if (sy < 0 || sy >= img.height()) continue;
    for (int x = 0; x < win.buffer_w; ++x) {
      const int sx = x + win.x0;
      if (sx < 0 || sx >= img.width()) continue;
      for (int c = 0; c < ch; ++c) out(x, y, c) = img(sx, sy, c);
    }
  }
  return {std::move(out), win.to_crop(b), win};
}

}  // namespace qpzoom

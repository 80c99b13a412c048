#include "qpzoom/geometry.hpp"

#include <gtest/gtest.h>

#include <random>

namespace qpzoom {
namespace {

TEST(CropSize, SquareBoxScalesByContextFactor) {
  const auto [W, H] = crop_size(Boxd{0, 0, 100, 100}, 5.0);
  EXPECT_DOUBLE_EQ(W, 500.0);
  EXPECT_DOUBLE_EQ(H, 500.0);
}

TEST(CropSize, UnitFactorRemovesContext) {
  EXPECT_DOUBLE_EQ(crop_size(Boxd{0, 0, 100, 100}, 1.0).first, 100.0);
}

TEST(CropSize, NonSquarePerAxis) {
  // sqrt(500 * 250), evaluated independently.
  EXPECT_NEAR(crop_size(Boxd{0, 0, 100, 50}, 5.0).first, 353.5533905932738, 1e-12);
}

TEST(CropSize, MeanContext) {
  // c = 75: sqrt((100 + 300) * (50 + 300))
  EXPECT_NEAR(crop_size(Boxd{0, 0, 100, 50}, 5.0, ContextMode::Mean).first, std::sqrt(400.0 * 350.0), 1e-12);
}

TEST(CropSize, RejectsBadInput) {
  EXPECT_THROW(crop_size(Boxd{0, 0, 0, 10}, 5.0), InvalidArgument);
  EXPECT_THROW(crop_size(Boxd{0, 0, 10, -1}, 5.0), InvalidArgument);
  EXPECT_THROW(crop_size(Boxd{0, 0, 10, 10}, 0.5), InvalidArgument);
  EXPECT_THROW(crop_size(Boxd{0, 0, 10, 10}, std::nan("")), InvalidArgument);
  EXPECT_THROW(crop_size(Boxd{0, 0, INFINITY, 10}, 2.0), InvalidArgument);
}

TEST(CropSize, MonotoneInFactorAndSymmetric) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ext(1, 300), fac(1, 8);
  for (int i = 0; i < 500; ++i) {
    const Boxd b{0, 0, ext(rng), ext(rng)};
    const Boxd swapped{0, 0, b.h, b.w};
    double f1 = fac(rng), f2 = fac(rng);
    if (f1 > f2) std::swap(f1, f2);
    for (auto mode : {ContextMode::PerAxis, ContextMode::Mean}) {
      EXPECT_LE(crop_size(b, f1, mode).first, crop_size(b, f2, mode).first);
      EXPECT_NEAR(crop_size(b, f1, mode).first, crop_size(swapped, f1, mode).first, 1e-9);
    }
  }
}

TEST(Box, CornerFormRoundTrips) {
  const Boxd b{12.5, -3.25, 8, 6.5};
  EXPECT_EQ(Boxd::from_corners(b.x0(), b.y0(), b.x1(), b.y1()), b);
}

TEST(Image, RejectsBadShapeAndSamples) {
  EXPECT_THROW(Imaged(0, 4, 1), InvalidArgument);
  EXPECT_THROW(Imaged(4, 4, 2), InvalidArgument);
  EXPECT_THROW(Imaged(2, 2, 1, std::vector<double>(3, 0.0)), InvalidArgument);
  EXPECT_THROW(Imaged(1, 1, 1, std::vector<double>{1.5}), InvalidArgument);
  EXPECT_THROW(Imaged(1, 1, 1, std::vector<double>{std::nan("")}), InvalidArgument);
}

TEST(CropImage, InteriorCropOfConstantImage) {
  const Imaged img(10, 10, 1, 0.5);
  const auto res = crop_image(img, Boxd{5, 5, 4, 4}, 8.0, 8.0);
  EXPECT_EQ(res.crop.width(), 8);
  EXPECT_EQ(res.crop.height(), 8);
  for (double v : res.crop.data()) EXPECT_EQ(v, 0.5);
  EXPECT_EQ(res.r, (Boxd{4, 4, 4, 4}));
}

TEST(CropImage, PadsOutsideTheImage) {
  const Imaged img(10, 10, 1, 0.5);
  const auto res = crop_image(img, Boxd{0, 0, 4, 4}, 8.0, 8.0, 0.0);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      EXPECT_EQ(res.crop(x, y), (x < 4 || y < 4) ? 0.0 : 0.5) << x << "," << y;
    }
  }
}

TEST(CropImage, IndexArithmeticMatchesPerPixelLoop) {
  Imaged img(20, 20, 3);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x)
      for (int c = 0; c < 3; ++c) img(x, y, c) = (x + 20 * y + 400 * c) / 1199.0;
  const auto res = crop_image(img, Boxd{10, 10, 6, 6}, 12.0, 12.0);
  EXPECT_EQ(res.crop(0, 0, 1), img(4, 4, 1));
  // Crop origin is round(cx - W/2) = 4 on both axes.
  for (int y = 0; y < 12; ++y)
    for (int x = 0; x < 12; ++x)
      for (int c = 0; c < 3; ++c) ASSERT_EQ(res.crop(x, y, c), img(x + 4, y + 4, c));
}

TEST(CropImage, FractionalExtentRoundsBufferUpAndFoldsResidualIntoR) {
  const Imaged img(50, 50, 1, 0.25);
  const Boxd b{20.3, 30.0, 10, 10};
  const auto res = crop_image(img, b, 15.5, 15.5);
  EXPECT_EQ(res.crop.width(), 16);
  EXPECT_EQ(res.window.x0, 13);  // round(20.3 - 7.75) = round(12.55)
  EXPECT_NEAR(res.r.cx, 7.3, 1e-12);
  EXPECT_EQ(res.r.w, 10.0);
  EXPECT_GE(res.r.x0(), 0.0);
  EXPECT_LE(res.r.x1(), 15.5);
}

TEST(CropImage, ConstantImageWithMatchingPadStaysConstant) {
  const Imaged img(6, 9, 3, 0.75);
  const auto res = crop_image(img, Boxd{1, 1, 5, 5}, 17.0, 13.0, 0.75);
  for (double v : res.crop.data()) EXPECT_EQ(v, 0.75);
}

TEST(CropImage, EmptyImageIsRejected) {
  EXPECT_THROW(crop_image(Imaged{}, Boxd{1, 1, 1, 1}, 2.0, 2.0), InvalidArgument);
}

}  // namespace
}  // namespace qpzoom

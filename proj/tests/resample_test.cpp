#include "qpzoom/resample.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace qpzoom {
namespace {

Imaged random_image(std::mt19937& rng, int w, int h, int c) {
  std::uniform_real_distribution<double> u(0, 1);
  Imaged img(w, h, c);
  for (auto& v : img.data()) v = u(rng);
  return img;
}

AxisMap<double> random_map(std::mt19937& rng, double W, double H, double w, double h, int m = 16, int n = 16) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  Intervals<double> d{Eigen::VectorXd(m), Eigen::VectorXd(n)};
  for (int i = 0; i < m; ++i) d.d_row(i) = u(rng);
  for (int i = 0; i < n; ++i) d.d_col(i) = u(rng);
  d.d_row *= H / d.d_row.sum();
  d.d_col *= W / d.d_col.sum();
  return axis_maps(control_grid(d, W, H), w, h);
}

double max_abs_diff(const Imaged& a, const Imaged& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

TEST(Warp, ConstantImageStaysConstant) {
  std::mt19937 rng(1);
  const Imaged img(97, 61, 3, 0.3);
  const auto out = warp(img, random_map(rng, 97, 61, 40, 30));
  EXPECT_EQ(out.width(), 40);
  EXPECT_EQ(out.height(), 30);
  for (double v : out.data()) EXPECT_NEAR(v, 0.3, 1e-15);
}

TEST(Warp, UniformMapEqualsUniformResize) {
  std::mt19937 rng(2);
  for (auto [W, H, w, h] : {std::array<int, 4>{500, 500, 256, 256}, {640, 480, 256, 256}, {100, 60, 200, 150}}) {
    const auto img = random_image(rng, W, H, 3);
    const auto a = warp(img, uniform_axis_map<double>(W, H, w, h, 16, 16));
    const auto b = uniform_resize(img, w, h);
    EXPECT_LE(max_abs_diff(a, b), 1e-6);
  }
}

TEST(Warp, HandTraceOnTwoPixelImage) {
  // xs = (0, 0.5, 2) on a 2 px target: x'=0 samples x_map(0.5)-0.5 = -0.25
  // (clamped to 0), x'=1 samples x_map(1.5)-0.5 = 0.75.
  const Imaged img(2, 1, 1, std::vector<double>{0.0, 1.0});
  ControlGrid<double> g{{0.0, 0.5, 2.0}, {0.0, 1.0}};
  const auto out = warp(img, axis_maps(g, 2.0, 1.0));
  ASSERT_EQ(out.width(), 2);
  EXPECT_DOUBLE_EQ(out(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(out(1, 0), 0.75);
}

TEST(Warp, MatchesPerPixelBilinearOracle) {
  std::mt19937 rng(3);
  const auto img = random_image(rng, 83, 71, 1);
  const auto am = random_map(rng, 83, 71, 64, 48);
  const auto out = warp(img, am);
  const auto& gx = am.x_map;
  const auto& gy = am.y_map;
  for (int y = 0; y < 48; ++y) {
    for (int x = 0; x < 64; ++x) {
      const double sx = oracle::piecewise_scan(gx.knots(), gx.values(), x + 0.5) - 0.5;
      const double sy = oracle::piecewise_scan(gy.knots(), gy.values(), y + 0.5) - 0.5;
      ASSERT_NEAR(out(x, y), oracle::bilinear_trace(img.data(), 83, 71, sx, sy), 1e-12);
    }
  }
}

TEST(Warp, OutputWithinSourceRangeAndLinear) {
  std::mt19937 rng(4);
  const auto A = random_image(rng, 50, 40, 1);
  const auto B = random_image(rng, 50, 40, 1);
  const auto am = random_map(rng, 50, 40, 33, 27);
  const double a = 0.3, b = 0.6;
  Imaged mix(50, 40, 1);
  for (std::size_t i = 0; i < mix.size(); ++i) mix.data()[i] = a * A.data()[i] + b * B.data()[i];
  const auto wa = warp(A, am), wb = warp(B, am), wm = warp(mix, am);
  const auto [lo, hi] = std::minmax_element(A.data().begin(), A.data().end());
  for (std::size_t i = 0; i < wm.size(); ++i) {
    EXPECT_NEAR(wm.data()[i], a * wa.data()[i] + b * wb.data()[i], 1e-6);
    EXPECT_GE(wa.data()[i], *lo);
    EXPECT_LE(wa.data()[i], *hi);
  }
}

TEST(UniformResize, SameSizeIsBitExactIdentity) {
  std::mt19937 rng(5);
  const auto img = random_image(rng, 37, 29, 3);
  EXPECT_EQ(uniform_resize(img, 37, 29), img);
}

TEST(UniformResize, TwoByTwoToOneIsMean) {
  const Imaged img(2, 2, 1, std::vector<double>{0.1, 0.2, 0.4, 0.9});
  EXPECT_NEAR(uniform_resize(img, 1, 1)(0, 0), 0.4, 1e-15);
}

TEST(UniformResize, RampFourToTwoHandTrace) {
  // v(x, y) = (x + 4y) / 15; target pixels sample at 0.5 and 2.5 on both axes.
  std::vector<double> data(16);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) data[y * 4 + x] = (x + 4 * y) / 15.0;
  const auto out = uniform_resize(Imaged(4, 4, 1, data), 2, 2);
  EXPECT_NEAR(out(0, 0), 2.5 / 15, 1e-15);
  EXPECT_NEAR(out(1, 0), 4.5 / 15, 1e-15);
  EXPECT_NEAR(out(0, 1), 10.5 / 15, 1e-15);
  EXPECT_NEAR(out(1, 1), 12.5 / 15, 1e-15);
  EXPECT_NEAR(out(1, 1), oracle::bilinear_trace(data, 4, 4, 2.5, 2.5), 1e-15);
}

TEST(UniformResize, RejectsBadInput) {
  EXPECT_THROW(uniform_resize(Imaged{}, 2, 2), InvalidArgument);
  EXPECT_THROW(uniform_resize(Imaged(2, 2, 1), 0, 2), InvalidArgument);
}

}  // namespace
}  // namespace qpzoom

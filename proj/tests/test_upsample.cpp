#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dealias/upsample.hpp"
#include "test_util.hpp"

namespace dealias {
namespace {

// Keys cubic with a = -0.5, written out independently of the library.
double keys(double x) {
  x = std::fabs(x);
  if (x < 1) return 1.5 * x * x * x - 2.5 * x * x + 1;
  if (x < 2) return -0.5 * x * x * x + 2.5 * x * x - 4 * x + 2;
  return 0;
}

// Direct 1-D cubic convolution over every source index, border-replicated.
double convolve_1d(const std::vector<double>& src, double s) {
  double acc = 0;
  const int n = static_cast<int>(src.size());
  for (int k = -4; k < n + 4; ++k) acc += src[std::clamp(k, 0, n - 1)] * keys(s - k);
  return acc;
}

TEST(UpsampleTest, ScaleFactorRejectsBelowTwo) {
  EXPECT_THROW(ScaleFactor(1), Error);
  EXPECT_EQ(ScaleFactor(2).value(), 2);
}

TEST(UpsampleTest, RejectsTinyImages) {
  EXPECT_THROW(upsample_catmull_rom(Image(3, 8, 1), ScaleFactor(2)), Error);
  EXPECT_THROW(upsample_bilinear(Image(8, 3, 1), ScaleFactor(2)), Error);
}

TEST(UpsampleTest, ConstantStaysConstant) {
  const Image src(5, 4, 3, 0.37);
  for (const Image& out : {upsample_catmull_rom(src, ScaleFactor(3)), upsample_bilinear(src, ScaleFactor(4))}) {
    ASSERT_EQ(out.bands(), 3);
    for (int b = 0; b < 3; ++b)
      for (double v : out.band(b).values()) EXPECT_NEAR(v, 0.37, 1e-12);
  }
}

TEST(UpsampleTest, OutputSize) {
  const Image out = upsample_catmull_rom(Image(5, 4, 1), ScaleFactor(4));
  EXPECT_EQ(out.width(), 20);
  EXPECT_EQ(out.height(), 16);
}

TEST(UpsampleTest, ReproducesSourceAtAlignedPixels) {
  // With odd U the output pixel X = U k + (U - 1) / 2 sits on source pixel k.
  std::mt19937_64 rng(11);
  const Image src = testing::random_image(rng, 6, 5, 1);
  for (int u : {3, 5}) {
    const Image cr = upsample_catmull_rom(src, ScaleFactor(u));
    const Image bl = upsample_bilinear(src, ScaleFactor(u));
    for (int y = 0; y < 5; ++y)
      for (int x = 0; x < 6; ++x) {
        const int ox = u * x + (u - 1) / 2, oy = u * y + (u - 1) / 2;
        EXPECT_DOUBLE_EQ(cr.at(0, ox, oy), src.at(0, x, y));
        EXPECT_DOUBLE_EQ(bl.at(0, ox, oy), src.at(0, x, y));
      }
  }
}

TEST(UpsampleTest, CatmullRomMatchesDirectConvolutionOnRamp) {
  const std::vector<double> ramp = {0, 1.0 / 3, 2.0 / 3, 1};
  const Image src = testing::gray_from_rows({ramp, ramp, ramp, ramp});
  const Image out = upsample_catmull_rom(src, ScaleFactor(2));
  for (int x = 2; x < 6; ++x) {
    const double s = (x + 0.5) / 2 - 0.5;
    const double expected = std::clamp(convolve_1d(ramp, s), 0.0, 1.0);
    for (int y = 0; y < 8; ++y) EXPECT_NEAR(out.at(0, x, y), expected, 1e-12) << x;
  }
  // Interior of a linear ramp is reproduced exactly by Catmull-Rom.
  EXPECT_NEAR(out.at(0, 3, 0), (1.25) / 3.0, 1e-12);
}

TEST(UpsampleTest, CatmullRomClampsOvershoot) {
  const Image src = testing::gray_from_rows({{0, 0, 1, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}});
  const Image out = upsample_catmull_rom(src, ScaleFactor(4));
  double lo = 1, hi = 0;
  for (double v : out.band(0).values()) lo = std::min(lo, v), hi = std::max(hi, v);
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 1.0);
}

TEST(UpsampleTest, BilinearMidpoint) {
  // {0, 1} row: the output pixels either side of the source midpoint are
  // symmetric about it and average to exactly 0.5.
  const Image src = testing::gray_from_rows({{0, 0, 1, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}, {0, 0, 1, 1}});
  const Image out = upsample_bilinear(src, ScaleFactor(2));
  EXPECT_DOUBLE_EQ(out.at(0, 3, 0), 0.25);
  EXPECT_DOUBLE_EQ(out.at(0, 4, 0), 0.75);
  EXPECT_DOUBLE_EQ((out.at(0, 3, 0) + out.at(0, 4, 0)) / 2, 0.5);
}

TEST(UpsampleTest, BilinearBoundedBySourceRange) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Image src = testing::random_image(rng, 4 + trial, 5, 1);
    double lo = 1, hi = 0;
    for (double v : src.band(0).values()) lo = std::min(lo, v), hi = std::max(hi, v);
    const Image out = upsample_bilinear(src, ScaleFactor(2 + trial % 3));
    for (double v : out.band(0).values()) {
      EXPECT_GE(v, lo - 1e-15);
      EXPECT_LE(v, hi + 1e-15);
    }
  }
}

}  // namespace
}  // namespace dealias

// Copyright 2026 The JointDamage Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "jointdamage/raster.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "jointdamage/error.h"
#include "jointdamage/png_io.h"
#include "test_util.h"

namespace jointdamage {
namespace {

constexpr Rgb kRed = {255, 0, 0};

double MeanChannel(const RasterImage& img, int c) {
  double s = 0;
  for (size_t i = c; i < img.data().size(); i += 3) s += img.data()[i];
  return s / (img.data().size() / 3);
}

TEST(ColorMask, EmptyMaskIsIdentity) {
  std::mt19937_64 rng(1);
  const RasterImage img = testing::RandomImage(rng, 13, 7);
  EXPECT_EQ(ApplyColorMask(img, BinaryMask(13, 7), kRed), img);
}

TEST(ColorMask, FullMaskPaintsEverything) {
  std::mt19937_64 rng(1);
  const RasterImage img = testing::RandomImage(rng, 13, 7);
  EXPECT_EQ(ApplyColorMask(img, BinaryMask(13, 7, true), kRed), RasterImage(13, 7, kRed));
}

TEST(ColorMask, CheckerboardMatchesReferenceLoop) {
  std::mt19937_64 rng(2);
  const RasterImage img = testing::RandomImage(rng, 16, 9);
  BinaryMask mask(16, 9);
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 16; ++x) mask.set(x, y, (x + y) % 2 == 0);
  }
  const RasterImage out = ApplyColorMask(img, mask, kRed);
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 16; ++x) {
      EXPECT_EQ(out.at(x, y), (x + y) % 2 == 0 ? kRed : img.at(x, y));
    }
  }
}

TEST(ColorMask, Idempotent) {
  std::mt19937_64 rng(3);
  const RasterImage img = testing::RandomImage(rng, 20, 20);
  const BinaryMask mask = testing::RandomMask(rng, 20, 20, 0.3);
  const RasterImage once = ApplyColorMask(img, mask, kRed);
  EXPECT_EQ(ApplyColorMask(once, mask, kRed), once);
}

TEST(ColorMask, DimensionMismatch) {
  try {
    ApplyColorMask(RasterImage(4, 4), BinaryMask(4, 5), kRed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Metrics2d, WorkedExample) {
  // 100 ground-truth pixels, 80 of them predicted plus 50 extra.
  BinaryMask gt(20, 20), pred(20, 20);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) gt.set(x, y, true);
  }
  int hits = 0;
  for (int y = 0; y < 10 && hits < 80; ++y) {
    for (int x = 0; x < 10 && hits < 80; ++x, ++hits) pred.set(x, y, true);
  }
  int extra = 0;
  for (int y = 10; y < 20 && extra < 50; ++y) {
    for (int x = 0; x < 20 && extra < 50; ++x, ++extra) pred.set(x, y, true);
  }
  const SegMetrics m = Metrics2d(pred, gt);
  EXPECT_EQ(m.tp, 80);
  EXPECT_EQ(m.fp, 50);
  EXPECT_EQ(m.fn, 20);
  EXPECT_DOUBLE_EQ(*m.recall, 0.8);
  EXPECT_DOUBLE_EQ(*m.error, 0.5);
}

TEST(Metrics2d, EmptyGroundTruthUndefined) {
  const SegMetrics m = Metrics2d(BinaryMask(5, 5, true), BinaryMask(5, 5));
  EXPECT_FALSE(m.defined());
  EXPECT_EQ(m.fp, 25);
}

TEST(Metrics2d, RandomPairIdentitiesAndSymmetries) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int w = 1 + rng() % 40, h = 1 + rng() % 40;
    const BinaryMask p = testing::RandomMask(rng, w, h, 0.4);
    const BinaryMask g = testing::RandomMask(rng, w, h, 0.3);
    const SegMetrics m = Metrics2d(p, g);
    EXPECT_EQ(m.tp + m.fp, static_cast<double>(p.Count()));
    EXPECT_EQ(m.tp + m.fn, static_cast<double>(g.Count()));
    for (const SegMetrics& t :
         {Metrics2d(FlipH(p), FlipH(g)), Metrics2d(FlipV(p), FlipV(g)),
          Metrics2d(Transpose(p), Transpose(g))}) {
      EXPECT_EQ(t.tp, m.tp);
      EXPECT_EQ(t.fp, m.fp);
      EXPECT_EQ(t.fn, m.fn);
    }
    if (g.Count() > 0) {
      const SegMetrics perfect = Metrics2d(g, g);
      EXPECT_EQ(perfect.recall, 1.0);
      EXPECT_EQ(perfect.error, 0.0);
    }
  }
}

TEST(Flip, InvolutionAndPixelMultiset) {
  std::mt19937_64 rng(5);
  for (auto [w, h] : {std::pair{1, 1}, std::pair{1, 7}, std::pair{6, 1}, std::pair{17, 12}}) {
    const RasterImage img = testing::RandomImage(rng, w, h);
    EXPECT_EQ(FlipH(FlipH(img)), img);
    EXPECT_EQ(FlipV(FlipV(img)), img);
    EXPECT_EQ(Transpose(Transpose(img)), img);
    auto histogram = [](const RasterImage& im) {
      std::map<std::array<uint8_t, 3>, int> counts;
      for (int y = 0; y < im.height(); ++y) {
        for (int x = 0; x < im.width(); ++x) {
          const Rgb c = im.at(x, y);
          ++counts[{c.r, c.g, c.b}];
        }
      }
      return counts;
    };
    EXPECT_EQ(histogram(FlipH(img)), histogram(img));
    EXPECT_EQ(histogram(FlipV(img)), histogram(img));
    EXPECT_EQ(FlipH(img).at(0, 0), img.at(w - 1, 0));
    EXPECT_EQ(FlipV(img).at(0, 0), img.at(0, h - 1));
  }
  const RasterImage one(1, 1, Rgb{9, 8, 7});
  EXPECT_EQ(FlipH(one), one);
  EXPECT_EQ(FlipV(one), one);
}

TEST(GaussianKernel, NormalizedAndSymmetric) {
  for (double sigma : {0.1, 0.25, 0.5, 1.0, 2.7, 10.0}) {
    const std::vector<double> k = GaussianKernel(sigma);
    EXPECT_EQ(k.size(), 2 * static_cast<size_t>(std::ceil(3 * sigma)) + 1);
    long double sum = 0;
    for (double w : k) sum += w;
    EXPECT_NEAR(static_cast<double>(sum), 1.0, 1e-12) << sigma;
    for (size_t i = 0; i < k.size(); ++i) EXPECT_EQ(k[i], k[k.size() - 1 - i]);
  }
}

TEST(GaussianKernel, QuarterSigmaValues) {
  // radius 1: weights proportional to exp(-8), 1, exp(-8)
  const std::vector<double> k = GaussianKernel(0.25);
  ASSERT_EQ(k.size(), 3u);
  const double e = std::exp(-8.0);
  EXPECT_NEAR(k[0], e / (1 + 2 * e), 1e-15);
  EXPECT_NEAR(k[1], 1 / (1 + 2 * e), 1e-15);
}

TEST(GaussianKernel, RejectsBadSigma) {
  for (double s : {0.0, -1.0, std::nan("")}) {
    EXPECT_THROW(GaussianKernel(s), Error);
  }
}

TEST(GaussianBlur, ConstantImageIsFixedPoint) {
  for (double sigma : {0.25, 1.0, 3.0}) {
    const RasterImage img(9, 5, Rgb{17, 200, 255});
    EXPECT_EQ(GaussianBlur(img, sigma), img);
  }
}

TEST(GaussianBlur, MeanConserved) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 1 + rng() % 30, h = 1 + rng() % 30;
    const double sigma = 0.2 + (rng() % 100) / 25.0;
    const RasterImage img = testing::RandomImage(rng, w, h);
    const RasterImage out = GaussianBlur(img, sigma);
    for (int c = 0; c < 3; ++c) {
      EXPECT_LE(std::abs(MeanChannel(out, c) - MeanChannel(img, c)) / 255, 0.5 / 255);
    }
  }
}

TEST(GaussianBlur, MatchesDirectTwoDimensionalSum) {
  std::mt19937_64 rng(7);
  const RasterImage img = testing::RandomImage(rng, 11, 8);
  const double sigma = 0.9;
  const int r = static_cast<int>(std::ceil(3 * sigma));
  auto mirror = [](int i, int n) {
    while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
    return i;
  };
  const RasterImage out = GaussianBlur(img, sigma);
  double norm = 0;
  for (int d = -r; d <= r; ++d) norm += std::exp(-0.5 * d * d / (sigma * sigma));
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 11; ++x) {
      double acc = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const double wgt = std::exp(-0.5 * (dx * dx + dy * dy) / (sigma * sigma)) / (norm * norm);
          acc += wgt * img.at(mirror(x + dx, 11), mirror(y + dy, 8)).g;
        }
      }
      EXPECT_NEAR(out.at(x, y).g, acc, 0.5 + 1e-9);
    }
  }
}

TEST(Brightness, ScalesRoundsAndClamps) {
  RasterImage img(3, 1);
  img.set(0, 0, {0, 100, 200});
  img.set(1, 0, {255, 1, 2});
  img.set(2, 0, {10, 11, 204});
  const RasterImage up = AdjustBrightness(img, 1.25);
  EXPECT_EQ(up.at(0, 0), (Rgb{0, 125, 250}));
  EXPECT_EQ(up.at(1, 0), (Rgb{255, 1, 3}));    // 1.25 -> 1, 2.5 -> 3
  EXPECT_EQ(up.at(2, 0), (Rgb{13, 14, 255}));  // 12.5 -> 13, 13.75 -> 14, 255
  const RasterImage down = AdjustBrightness(img, 0.75);
  EXPECT_EQ(down.at(0, 0), (Rgb{0, 75, 150}));
  EXPECT_EQ(down.at(1, 0), (Rgb{191, 1, 2}));  // 191.25, 0.75 -> 1, 1.5 -> 2
  EXPECT_EQ(AdjustBrightness(img, 1.0), img);
  EXPECT_THROW(AdjustBrightness(img, 0), Error);
}

TEST(Brightness, DoubleClampsAndHalfMatchesReferenceLoop) {
  EXPECT_EQ(AdjustBrightness(RasterImage(2, 2, Rgb{200, 100, 0}), 2.0),
            RasterImage(2, 2, Rgb{255, 200, 0}));
  std::mt19937_64 rng(10);
  const RasterImage img = testing::RandomImage(rng, 19, 11);
  const RasterImage half = AdjustBrightness(img, 0.5);
  for (size_t i = 0; i < img.data().size(); ++i) {
    const int expected = static_cast<int>(std::floor(img.data()[i] * 0.5 + 0.5));
    EXPECT_EQ(half.data()[i], expected);
  }
}

TEST(GaussianBlur, ImpulseResponseIsKernel) {
  // Far from the border the blurred impulse is the outer product of the
  // direct-evaluation weights, up to output rounding.
  RasterImage img(9, 9);
  img.set(4, 4, {255, 255, 255});
  const RasterImage out = GaussianBlur(img, 0.25);
  const double e = std::exp(-8.0);
  const double w[3] = {e / (1 + 2 * e), 1 / (1 + 2 * e), e / (1 + 2 * e)};
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      EXPECT_EQ(out.at(4 + dx, 4 + dy).r, std::lround(255 * w[dx + 1] * w[dy + 1]));
    }
  }
  EXPECT_EQ(out.at(4, 4).r, 255);
  EXPECT_EQ(out.at(0, 0).r, 0);
}

TEST(Augment, PlanShape) {
  const auto plan = PlanAugmentation(263, 42, 5);
  ASSERT_EQ(plan.size(), 263u * 6);
  for (size_t i = 0; i < plan.size(); ++i) {
    EXPECT_EQ(plan[i].source, i / 6);
    EXPECT_EQ(plan[i].variant, static_cast<int>(i % 6));
    if (plan[i].variant == 0) EXPECT_EQ(plan[i].op, AugmentOp::kNone);
  }
  EXPECT_TRUE(PlanAugmentation(0, 1, 5).empty());
  EXPECT_EQ(PlanAugmentation(3, 1, 0).size(), 3u);
}

TEST(Augment, PlanUsesEveryOpAndDependsOnSeed) {
  const auto a = PlanAugmentation(200, 1, 5);
  const auto b = PlanAugmentation(200, 2, 5);
  std::array<int, kNumAugmentOps> counts{};
  bool differs = false;
  for (size_t i = 0; i < a.size(); ++i) {
    ++counts[static_cast<int>(a[i].op)];
    differs |= a[i].op != b[i].op;
  }
  for (int c : counts) EXPECT_GT(c, 0);
  EXPECT_TRUE(differs);
}

TEST(Augment, BatchDeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(8);
  std::vector<RasterImage> images;
  for (int i = 0; i < 20; ++i) images.push_back(testing::RandomImage(rng, 8 + i, 6));
  const auto ref = AugmentBatch(images, 99, 5, {}, 1);
  ASSERT_EQ(ref.size(), 120u);
  EXPECT_EQ(AugmentBatch(images, 99, 5, {}, 4), ref);
  const auto plan = PlanAugmentation(images.size(), 99, 5);
  for (size_t i = 0; i < plan.size(); ++i) {
    EXPECT_EQ(ref[i], ApplyAugmentOp(images[plan[i].source], plan[i].op));
  }
  AugmentParams bad;
  bad.blur_sigma = 0;
  EXPECT_THROW(AugmentBatch(images, 99, 5, bad), Error);
}

TEST(Png, RoundTrip) {
  std::mt19937_64 rng(9);
  const RasterImage img = testing::RandomImage(rng, 23, 17);
  EXPECT_EQ(DecodePng(EncodePng(img)), img);
  const BinaryMask mask = testing::RandomMask(rng, 23, 17, 0.5);
  EXPECT_EQ(DecodeMaskPng(EncodeMaskPng(mask)), mask);
  EXPECT_THROW(DecodePng("not a png"), Error);
}

}  // namespace
}  // namespace jointdamage

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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "jointdamage/error.h"
#include "parallel.h"

namespace jointdamage {
namespace {

void CheckDims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be at least 1x1");
  }
}

template <typename A, typename B>
void CheckSameDims(const A& a, const B& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

// Half-sample symmetric reflection: ... c b a | a b c | c b a ...
int Mirror(int i, int n) {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

uint8_t ClampRound(double v) {
  return static_cast<uint8_t>(std::clamp<long>(std::lround(v), 0, 255));
}

}  // namespace

RasterImage::RasterImage(int width, int height, Rgb fill) : width_(width), height_(height) {
  CheckDims(width, height);
  data_.resize(static_cast<size_t>(width) * height * 3);
  for (size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
  }
}

RasterImage::RasterImage(int width, int height, std::vector<uint8_t> rgb)
    : width_(width), height_(height), data_(std::move(rgb)) {
  CheckDims(width, height);
  if (data_.size() != static_cast<size_t>(width) * height * 3) {
    throw Error(ErrorCode::kDimensionMismatch, "pixel buffer size does not match dimensions");
  }
}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : width_(width), height_(height) {
  CheckDims(width, height);
  bits_.assign(static_cast<size_t>(width) * height, fill ? 1 : 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  CheckDims(width, height);
  if (bits_.size() != static_cast<size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch, "mask buffer size does not match dimensions");
  }
  for (uint8_t& b : bits_) b = b != 0 ? 1 : 0;
}

size_t BinaryMask::Count() const {
  return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), uint8_t{1}));
}

RasterImage ApplyColorMask(const RasterImage& image, const BinaryMask& mask, Rgb color) {
  CheckSameDims(image, mask);
  RasterImage out = image;
  const auto& bits = mask.bits();
  auto& px = out.data();
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      px[3 * i] = color.r;
      px[3 * i + 1] = color.g;
      px[3 * i + 2] = color.b;
    }
  }
  return out;
}

SegMetrics Metrics2d(const BinaryMask& pred, const BinaryMask& gt) {
  CheckSameDims(pred, gt);
  size_t tp = 0, fp = 0, fn = 0;
  const auto& p = pred.bits();
  const auto& g = gt.bits();
  for (size_t i = 0; i < p.size(); ++i) {
    tp += p[i] & g[i];
    fp += p[i] & (g[i] ^ 1);
    fn += (p[i] ^ 1) & g[i];
  }
  return MakeSegMetrics(static_cast<double>(tp), static_cast<double>(fp),
                        static_cast<double>(fn));
}

std::vector<double> GaussianKernel(double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "blur sigma must be positive");
  }
  const int radius = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> k(2 * radius + 1);
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
  }
  const double sum = PairwiseSum(k);
  for (double& w : k) w /= sum;
  return k;
}

RasterImage GaussianBlur(const RasterImage& image, double sigma) {
  const std::vector<double> k = GaussianKernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  const int w = image.width();
  const int h = image.height();
  const auto& src = image.data();

  std::vector<double> tmp(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0, 0, 0};
      for (int d = -radius; d <= radius; ++d) {
        const size_t s = (static_cast<size_t>(y) * w + Mirror(x + d, w)) * 3;
        const double wt = k[d + radius];
        acc[0] += wt * src[s];
        acc[1] += wt * src[s + 1];
        acc[2] += wt * src[s + 2];
      }
      const size_t o = (static_cast<size_t>(y) * w + x) * 3;
      tmp[o] = acc[0];
      tmp[o + 1] = acc[1];
      tmp[o + 2] = acc[2];
    }
  }

  RasterImage out(w, h);
  auto& dst = out.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0, 0, 0};
      for (int d = -radius; d <= radius; ++d) {
        const size_t s = (static_cast<size_t>(Mirror(y + d, h)) * w + x) * 3;
        const double wt = k[d + radius];
        acc[0] += wt * tmp[s];
        acc[1] += wt * tmp[s + 1];
        acc[2] += wt * tmp[s + 2];
      }
      const size_t o = (static_cast<size_t>(y) * w + x) * 3;
      dst[o] = ClampRound(acc[0]);
      dst[o + 1] = ClampRound(acc[1]);
      dst[o + 2] = ClampRound(acc[2]);
    }
  }
  return out;
}

RasterImage AdjustBrightness(const RasterImage& image, double factor) {
  if (!(factor > 0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::kInvalidArgument, "brightness factor must be positive");
  }
  RasterImage out = image;
  for (uint8_t& c : out.data()) c = ClampRound(c * factor);
  return out;
}

RasterImage FlipH(const RasterImage& image) {
  RasterImage out = image;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) out.set(image.width() - 1 - x, y, image.at(x, y));
  }
  return out;
}

RasterImage FlipV(const RasterImage& image) {
  RasterImage out = image;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) out.set(x, image.height() - 1 - y, image.at(x, y));
  }
  return out;
}

RasterImage Transpose(const RasterImage& image) {
  RasterImage out(image.height(), image.width());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) out.set(y, x, image.at(x, y));
  }
  return out;
}

BinaryMask FlipH(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) out.set(mask.width() - 1 - x, y, mask.at(x, y));
  }
  return out;
}

BinaryMask FlipV(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) out.set(x, mask.height() - 1 - y, mask.at(x, y));
  }
  return out;
}

BinaryMask Transpose(const BinaryMask& mask) {
  BinaryMask out(mask.height(), mask.width());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) out.set(y, x, mask.at(x, y));
  }
  return out;
}

const char* AugmentOpName(AugmentOp op) {
  switch (op) {
    case AugmentOp::kNone:
      return "none";
    case AugmentOp::kBlur:
      return "blur";
    case AugmentOp::kBrighten:
      return "brighten";
    case AugmentOp::kDarken:
      return "darken";
    case AugmentOp::kFlipH:
      return "flip_h";
    case AugmentOp::kFlipV:
      return "flip_v";
  }
  return "unknown";
}

RasterImage ApplyAugmentOp(const RasterImage& image, AugmentOp op, const AugmentParams& params) {
  switch (op) {
    case AugmentOp::kNone:
      return image;
    case AugmentOp::kBlur:
      return GaussianBlur(image, params.blur_sigma);
    case AugmentOp::kBrighten:
      return AdjustBrightness(image, params.brighten_factor);
    case AugmentOp::kDarken:
      return AdjustBrightness(image, params.darken_factor);
    case AugmentOp::kFlipH:
      return FlipH(image);
    case AugmentOp::kFlipV:
      return FlipV(image);
  }
  return image;
}

std::vector<AugmentStep> PlanAugmentation(size_t num_images, uint64_t seed, int ops_per_image) {
  if (ops_per_image < 0) {
    throw Error(ErrorCode::kInvalidArgument, "ops_per_image must be non-negative");
  }
  // mt19937_64 output is fixed by the standard; distributions are not, so
  // the draw is done by hand: top three bits, rejecting 6 and 7.
  std::mt19937_64 rng(seed);
  auto draw = [&rng] {
    while (true) {
      const uint64_t v = rng() >> 61;
      if (v < kNumAugmentOps) return static_cast<AugmentOp>(v);
    }
  };
  std::vector<AugmentStep> plan;
  plan.reserve(num_images * (1 + static_cast<size_t>(ops_per_image)));
  for (size_t i = 0; i < num_images; ++i) {
    plan.push_back({i, 0, AugmentOp::kNone});
    for (int k = 1; k <= ops_per_image; ++k) plan.push_back({i, k, draw()});
  }
  return plan;
}

std::vector<RasterImage> AugmentBatch(std::span<const RasterImage> images, uint64_t seed,
                                      int ops_per_image, const AugmentParams& params,
                                      unsigned num_threads) {
  const std::vector<AugmentStep> plan = PlanAugmentation(images.size(), seed, ops_per_image);
  // Workers must not throw.
  GaussianKernel(params.blur_sigma);
  if (!(params.brighten_factor > 0) || !(params.darken_factor > 0) ||
      !std::isfinite(params.brighten_factor) || !std::isfinite(params.darken_factor)) {
    throw Error(ErrorCode::kInvalidArgument, "brightness factors must be positive");
  }
  // Placeholder 1x1 images, overwritten slot by slot.
  std::vector<RasterImage> out(plan.size(), RasterImage(1, 1));
  ParallelFor(plan.size(), num_threads, 64, [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      out[i] = ApplyAugmentOp(images[plan[i].source], plan[i].op, params);
    }
  });
  return out;
}

}  // namespace jointdamage

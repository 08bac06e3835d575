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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jointdamage/damage.h"
#include "jointdamage/mesh.h"

namespace jointdamage {

/// Row-major interleaved RGB, 8 bits per channel.
class RasterImage {
 public:
  /// Throws kInvalidArgument unless width, height >= 1.
  RasterImage(int width, int height, Rgb fill = {});
  /// `rgb` must hold exactly width * height * 3 bytes.
  RasterImage(int width, int height, std::vector<uint8_t> rgb);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<uint8_t>& data() const { return data_; }
  std::vector<uint8_t>& data() { return data_; }

  Rgb at(int x, int y) const {
    const uint8_t* p = &data_[Offset(x, y)];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) {
    uint8_t* p = &data_[Offset(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  bool operator==(const RasterImage&) const = default;

 private:
  size_t Offset(int x, int y) const {
    return (static_cast<size_t>(y) * width_ + x) * 3;
  }

  int width_;
  int height_;
  std::vector<uint8_t> data_;
};

/// Row-major per-pixel flags; true marks damage.
class BinaryMask {
 public:
  BinaryMask(int width, int height, bool fill = false);
  /// Any nonzero byte counts as set.
  BinaryMask(int width, int height, std::vector<uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<uint8_t>& bits() const { return bits_; }

  bool at(int x, int y) const {
    return bits_[static_cast<size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool v) {
    bits_[static_cast<size_t>(y) * width_ + x] = v ? 1 : 0;
  }
  size_t Count() const;

  bool operator==(const BinaryMask&) const = default;

 private:
  int width_;
  int height_;
  std::vector<uint8_t> bits_;  // 0 or 1
};

/// Replaces masked pixels by `color`. Throws kDimensionMismatch.
RasterImage ApplyColorMask(const RasterImage& image, const BinaryMask& mask,
                           Rgb color);

/// Pixel-count confusion between two masks of equal size.
SegMetrics Metrics2d(const BinaryMask& pred, const BinaryMask& gt);

/// Normalized 1D Gaussian taps for offsets -r..r, r = ceil(3 * sigma).
std::vector<double> GaussianKernel(double sigma);

/// Separable Gaussian blur with half-sample mirror padding (abc|cba), which
/// keeps the per-channel sum unchanged up to final rounding. Throws
/// kInvalidArgument for sigma <= 0.
RasterImage GaussianBlur(const RasterImage& image, double sigma);

/// channel = clamp(round(channel * factor), 0, 255). factor must be > 0.
RasterImage AdjustBrightness(const RasterImage& image, double factor);

RasterImage FlipH(const RasterImage& image);
RasterImage FlipV(const RasterImage& image);
RasterImage Transpose(const RasterImage& image);
BinaryMask FlipH(const BinaryMask& mask);
BinaryMask FlipV(const BinaryMask& mask);
BinaryMask Transpose(const BinaryMask& mask);

enum class AugmentOp { kNone, kBlur, kBrighten, kDarken, kFlipH, kFlipV };
inline constexpr int kNumAugmentOps = 6;

const char* AugmentOpName(AugmentOp op);

struct AugmentParams {
  double blur_sigma = 0.25;
  double brighten_factor = 1.25;
  double darken_factor = 0.75;
};

RasterImage ApplyAugmentOp(const RasterImage& image, AugmentOp op,
                           const AugmentParams& params = {});

/// One augmented output: which input it came from and what was applied.
/// variant 0 is the untouched original.
struct AugmentStep {
  size_t source = 0;
  int variant = 0;
  AugmentOp op = AugmentOp::kNone;
};

/// The op sequence AugmentBatch will use: for each input, the original
/// followed by `ops_per_image` ops drawn uniformly from all six ops.
/// Depends only on (num_images, seed, ops_per_image).
std::vector<AugmentStep> PlanAugmentation(size_t num_images, uint64_t seed,
                                          int ops_per_image);

/// Returns num_images * (1 + ops_per_image) images in plan order. Images
/// may be processed concurrently; the output is identical to a sequential
/// run.
std::vector<RasterImage> AugmentBatch(std::span<const RasterImage> images,
                                      uint64_t seed, int ops_per_image,
                                      const AugmentParams& params = {},
                                      unsigned num_threads = 0);

}  // namespace jointdamage

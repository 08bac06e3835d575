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

#include "jointdamage/png_io.h"

#include <png.h>

#include <cstring>
#include <limits>

#include "jointdamage/error.h"
#include "jointdamage/mesh_io.h"

namespace jointdamage {
namespace {

// Decodes to 8-bit pixels in the requested libpng format (RGB or GRAY).
std::vector<uint8_t> Decode(std::string_view bytes, png_uint_32 format, int* width, int* height) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kMalformedData, std::string("png: ") + image.message);
  }
  if (image.width == 0 || image.height == 0 ||
      image.width > static_cast<png_uint_32>(std::numeric_limits<int>::max()) ||
      image.height > static_cast<png_uint_32>(std::numeric_limits<int>::max())) {
    png_image_free(&image);
    throw Error(ErrorCode::kMalformedData, "png: unsupported dimensions");
  }
  image.format = format;
  std::vector<uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kMalformedData, "png: " + msg);
  }
  *width = static_cast<int>(image.width);
  *height = static_cast<int>(image.height);
  return pixels;
}

std::string Encode(const uint8_t* pixels, int width, int height, png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels, 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png encode: ") + image.message);
  }
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels, 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

}  // namespace

RasterImage DecodePng(std::string_view bytes) {
  int w = 0, h = 0;
  std::vector<uint8_t> px = Decode(bytes, PNG_FORMAT_RGB, &w, &h);
  return RasterImage(w, h, std::move(px));
}

BinaryMask DecodeMaskPng(std::string_view bytes) {
  int w = 0, h = 0;
  const std::vector<uint8_t> px = Decode(bytes, PNG_FORMAT_RGB, &w, &h);
  std::vector<uint8_t> bits(static_cast<size_t>(w) * h);
  for (size_t i = 0; i < bits.size(); ++i) {
    bits[i] = (px[3 * i] | px[3 * i + 1] | px[3 * i + 2]) != 0;
  }
  return BinaryMask(w, h, std::move(bits));
}

std::string EncodePng(const RasterImage& image) {
  return Encode(image.data().data(), image.width(), image.height(), PNG_FORMAT_RGB);
}

std::string EncodeMaskPng(const BinaryMask& mask) {
  std::vector<uint8_t> gray(mask.bits().size());
  for (size_t i = 0; i < gray.size(); ++i) gray[i] = mask.bits()[i] ? 255 : 0;
  return Encode(gray.data(), mask.width(), mask.height(), PNG_FORMAT_GRAY);
}

RasterImage ReadPng(const std::string& path) { return DecodePng(ReadFileBytes(path)); }

BinaryMask ReadMaskPng(const std::string& path) { return DecodeMaskPng(ReadFileBytes(path)); }

void WritePng(const std::string& path, const RasterImage& image) {
  WriteFileBytes(path, EncodePng(image));
}

void WriteMaskPng(const std::string& path, const BinaryMask& mask) {
  WriteFileBytes(path, EncodeMaskPng(mask));
}

}  // namespace jointdamage

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

#include <string>
#include <string_view>

#include "jointdamage/raster.h"

namespace jointdamage {

// Any PNG color type is accepted; alpha is dropped, gray is expanded.
RasterImage DecodePng(std::string_view bytes);
// Masks: a pixel is damage when any channel is nonzero.
BinaryMask DecodeMaskPng(std::string_view bytes);

std::string EncodePng(const RasterImage& image);
// 8-bit grayscale, 0 / 255.
std::string EncodeMaskPng(const BinaryMask& mask);

RasterImage ReadPng(const std::string& path);
BinaryMask ReadMaskPng(const std::string& path);
void WritePng(const std::string& path, const RasterImage& image);
void WriteMaskPng(const std::string& path, const BinaryMask& mask);

}  // namespace jointdamage

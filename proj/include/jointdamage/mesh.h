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

#include <array>
#include <cstdint>
#include <vector>

namespace jointdamage {

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb kDamageGreen{0, 255, 0};

/// A mesh vertex. Positions are in mesh units (millimetres once scaled by
/// the coordinate scale); color channels are 0-255.
struct ColoredVertex {
  std::array<float, 3> position{};
  Rgb color;

  bool operator==(const ColoredVertex&) const = default;
};

/// Vertex indices of one triangle. Repeated indices are allowed and give a
/// zero-area face.
struct TriFace {
  std::array<uint32_t, 3> v{};

  bool operator==(const TriFace&) const = default;
};

/// Vertex-colored triangle mesh, as produced by a photogrammetry pipeline.
///
/// `face_colors` is either empty or holds one color per face; it is only
/// populated on the output side (recolored meshes) or when a parsed file
/// carries per-face colors. `has_vertex_colors` is false for meshes built
/// without color information, in which case damage classification refuses
/// to run.
struct TriMesh {
  std::vector<ColoredVertex> vertices;
  std::vector<TriFace> faces;
  std::vector<Rgb> face_colors;
  bool has_vertex_colors = true;

  size_t NumVert() const { return vertices.size(); }
  size_t NumTri() const { return faces.size(); }

  bool operator==(const TriMesh&) const = default;
};

/// Throws Error(kIndexOutOfRange) on a bad face index, kMalformedData on a
/// non-finite coordinate or a face_colors array of the wrong length.
void ValidateMesh(const TriMesh& mesh);

/// Hash of vertex positions and face indices. Colors are excluded so that a
/// recolored companion mesh (e.g. a manually segmented ground truth) has the
/// same fingerprint as the mesh it was derived from.
uint64_t GeometryFingerprint(const TriMesh& mesh);

}  // namespace jointdamage

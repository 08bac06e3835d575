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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jointdamage/mesh.h"

namespace jointdamage {

class DamageLabeling;

enum class PlyEncoding { kAscii, kBinaryLittleEndian };

/**
 * Parses a PLY 1.0 file (ascii or binary_little_endian).
 *
 * The vertex element must carry x, y, z and red, green, blue; the face
 * element must carry a list property named vertex_indices (or vertex_index)
 * with exactly three entries per face. A face red/green/blue triple, if
 * present, is read into TriMesh::face_colors. Any other element or property
 * is skipped and reported through `warnings` when it is non-null.
 *
 * Never crashes on arbitrary input: every failure is an Error with one of
 * kMalformedHeader, kUnsupportedFormat, kMalformedData, kNonTriangularFace,
 * kIndexOutOfRange or kColorlessMesh.
 */
TriMesh ParsePly(std::span<const std::byte> bytes,
                 std::vector<std::string>* warnings = nullptr);
TriMesh ParsePly(std::string_view bytes,
                 std::vector<std::string>* warnings = nullptr);

/**
 * Serializes a mesh. Vertices are written as float x,y,z + uchar
 * red,green,blue; faces as a uchar-counted int list.
 *
 * With a labeling, per-face red,green,blue properties are emitted: damaged
 * faces become (0,255,0) and the rest keep the mesh's face color or, when
 * the mesh has none, the rounded mean of their three vertex colors. Vertex
 * colors are never modified. Without a labeling, face colors are emitted
 * only if the mesh already has them.
 *
 * ASCII floats are printed with 9 significant digits, which round-trips
 * float32 exactly.
 */
std::string WritePly(const TriMesh& mesh, PlyEncoding encoding,
                     const DamageLabeling* labeling = nullptr);

/// Parses OBJ with 6-component vertex lines "v x y z r g b" (colors as
/// reals in [0,1], quantized by round(c*255)) and triangular "f" records.
/// Texture/normal references in "f a/b/c" are ignored; vn, vt, o, g, s,
/// usemtl and mtllib records are skipped.
TriMesh ParseObj(std::string_view text);

std::string WriteObj(const TriMesh& mesh);

/// Reads a whole file; throws Error(kIo) when it cannot be opened.
std::string ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::string_view bytes);

/// Dispatches on extension (.ply / .obj, case-insensitive).
TriMesh LoadMesh(const std::string& path,
                 std::vector<std::string>* warnings = nullptr);

}  // namespace jointdamage

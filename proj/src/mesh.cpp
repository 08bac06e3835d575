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

#include "jointdamage/mesh.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "jointdamage/error.h"

namespace jointdamage {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedHeader:
      return "malformed_header";
    case ErrorCode::kUnsupportedFormat:
      return "unsupported_format";
    case ErrorCode::kMalformedData:
      return "malformed_data";
    case ErrorCode::kNonTriangularFace:
      return "non_triangular_face";
    case ErrorCode::kIndexOutOfRange:
      return "index_out_of_range";
    case ErrorCode::kColorlessMesh:
      return "colorless_mesh";
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kMeshMismatch:
      return "mesh_mismatch";
    case ErrorCode::kConflictingPatches:
      return "conflicting_patches";
    case ErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

void ValidateMesh(const TriMesh& mesh) {
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    for (float c : mesh.vertices[i].position) {
      if (!std::isfinite(c)) {
        throw Error(ErrorCode::kMalformedData,
                    "vertex " + std::to_string(i) + " has a non-finite coordinate");
      }
    }
  }
  const size_t nv = mesh.vertices.size();
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    for (uint32_t idx : mesh.faces[f].v) {
      if (idx >= nv) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "face " + std::to_string(f) + " references vertex " +
                        std::to_string(idx) + " but the mesh has " +
                        std::to_string(nv) + " vertices");
      }
    }
  }
  if (!mesh.face_colors.empty() && mesh.face_colors.size() != mesh.faces.size()) {
    throw Error(ErrorCode::kMalformedData,
                "face_colors must be empty or match the face count");
  }
}

namespace {

// splitmix64 finalizer
uint64_t Mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t GeometryFingerprint(const TriMesh& mesh) {
  uint64_t h = Mix(mesh.vertices.size()) ^ Mix(~mesh.faces.size());
  for (const ColoredVertex& v : mesh.vertices) {
    uint64_t xy = (uint64_t{std::bit_cast<uint32_t>(v.position[0])} << 32) |
                  std::bit_cast<uint32_t>(v.position[1]);
    h = Mix(h ^ xy);
    h = Mix(h ^ std::bit_cast<uint32_t>(v.position[2]));
  }
  for (const TriFace& f : mesh.faces) {
    h = Mix(h ^ ((uint64_t{f.v[0]} << 32) | f.v[1]));
    h = Mix(h ^ f.v[2]);
  }
  // 0 is reserved for "no mesh".
  return h == 0 ? 1 : h;
}

}  // namespace jointdamage

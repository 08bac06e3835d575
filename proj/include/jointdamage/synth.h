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

// Synthetic scenes with exactly known answers: planar grid meshes with red
// damage patches, and mask pairs with known confusion counts.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jointdamage/damage.h"
#include "jointdamage/mesh.h"
#include "jointdamage/raster.h"

namespace jointdamage {

/// Cells [x0, x1) x [y0, y1) in grid cell coordinates.
struct CellRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;
};

struct DamagePatch {
  CellRect cells;
  int red = 255;
};

/// Red channel ramps linearly from `start` at coordinate 0 to `end` at the
/// far edge along `axis` (0 = x, 1 = y), replacing the red of every vertex.
struct RedGradient {
  int axis = 0;
  double start = 0;
  double end = 255;
};

struct SynthMeshSpec {
  int grid_nx = 10;
  int grid_ny = 10;
  double cell_size = 1;  // mm
  std::vector<DamagePatch> patches;
  int background_red = 128;
  std::optional<RedGradient> gradient;
  int noise_amplitude = 0;  // uniform +-n on red, 0 = noiseless
  uint64_t noise_seed = 0;
};

struct SynthMesh {
  TriMesh mesh;
  DamageLabeling gt;
  double exact_patch_area = 0;  // mm^2
};

/**
 * Builds a flat (nx+1) x (ny+1) vertex grid in the z=0 plane, each cell
 * split into two triangles along its lower-left to upper-right diagonal.
 *
 * Patch vertices (closed rectangles) are colored (red, 0, 0); background
 * vertices are gray (background_red in every channel). The ground truth is
 * the set of faces whose three vertices all lie in some patch, and
 * exact_patch_area is its closed-form area, count * cell_size^2 / 2.
 *
 * Throws kConflictingPatches if a vertex is claimed by two patches with
 * different intensities, kInvalidArgument for out-of-range parameters.
 */
SynthMesh GeneratePlaneMesh(const SynthMeshSpec& spec);

/// Pixel rectangle [x, x+w) x [y, y+h).
struct PixelRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

struct SynthMaskSpec {
  int width = 32;
  int height = 32;
  PixelRect gt;
  PixelRect pred;
};

struct SynthMaskPair {
  BinaryMask pred;
  BinaryMask gt;
  SegMetrics expected;
};

/// Expected counts come from rectangle intersection arithmetic alone.
SynthMaskPair GenerateMaskPair(const SynthMaskSpec& spec);

}  // namespace jointdamage

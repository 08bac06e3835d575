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

#include "jointdamage/synth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "jointdamage/error.h"

namespace jointdamage {
namespace {

[[noreturn]] void Invalid(const std::string& msg) {
  throw Error(ErrorCode::kInvalidArgument, msg);
}

void CheckChannel(int v, const char* what) {
  if (v < 0 || v > 255) Invalid(std::string(what) + " outside 0-255");
}

// Uniform integer in [-n, n] from raw mt19937_64 output (rejection sampled,
// so the sequence is the same on every standard library).
int UniformSymmetric(std::mt19937_64& rng, int n) {
  const uint64_t range = 2 * static_cast<uint64_t>(n) + 1;
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % range;
  uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<int>(v % range) - n;
}

}  // namespace

SynthMesh GeneratePlaneMesh(const SynthMeshSpec& spec) {
  if (spec.grid_nx < 1 || spec.grid_ny < 1) Invalid("grid needs at least one cell per axis");
  if (!(spec.cell_size > 0) || !std::isfinite(spec.cell_size)) Invalid("cell size must be positive");
  const uint64_t nvx = static_cast<uint64_t>(spec.grid_nx) + 1;
  const uint64_t nvy = static_cast<uint64_t>(spec.grid_ny) + 1;
  if (nvx * nvy > std::numeric_limits<uint32_t>::max() ||
      2ull * spec.grid_nx * spec.grid_ny > std::numeric_limits<uint32_t>::max()) {
    Invalid("grid too large for 32-bit indices");
  }
  CheckChannel(spec.background_red, "background red");
  if (spec.noise_amplitude < 0 || spec.noise_amplitude > 255) Invalid("noise amplitude outside 0-255");
  for (const DamagePatch& p : spec.patches) {
    const CellRect& c = p.cells;
    if (c.x0 < 0 || c.y0 < 0 || c.x1 > spec.grid_nx || c.y1 > spec.grid_ny || c.x0 >= c.x1 ||
        c.y0 >= c.y1) {
      Invalid("patch outside the grid or empty");
    }
    CheckChannel(p.red, "patch red");
  }
  if (spec.gradient) {
    if (spec.gradient->axis != 0 && spec.gradient->axis != 1) Invalid("gradient axis must be 0 or 1");
    if (!std::isfinite(spec.gradient->start) || !std::isfinite(spec.gradient->end)) {
      Invalid("gradient ends must be finite");
    }
  }

  SynthMesh out;
  TriMesh& mesh = out.mesh;
  mesh.vertices.resize(nvx * nvy);
  std::vector<uint8_t> in_patch(mesh.vertices.size(), 0);
  std::mt19937_64 rng(spec.noise_seed);
  const uint8_t bg = static_cast<uint8_t>(spec.background_red);

  for (int j = 0; j <= spec.grid_ny; ++j) {
    for (int i = 0; i <= spec.grid_nx; ++i) {
      const size_t idx = static_cast<size_t>(j) * nvx + i;
      int red = -1;
      for (const DamagePatch& p : spec.patches) {
        const CellRect& c = p.cells;
        if (i < c.x0 || i > c.x1 || j < c.y0 || j > c.y1) continue;
        if (red >= 0 && red != p.red) {
          throw Error(ErrorCode::kConflictingPatches,
                      "vertex (" + std::to_string(i) + "," + std::to_string(j) +
                          ") lies in patches of different intensity");
        }
        red = p.red;
      }
      ColoredVertex& v = mesh.vertices[idx];
      v.position = {static_cast<float>(i * spec.cell_size), static_cast<float>(j * spec.cell_size),
                    0.0f};
      if (red >= 0) {
        in_patch[idx] = 1;
        v.color = {static_cast<uint8_t>(red), 0, 0};
      } else {
        v.color = {bg, bg, bg};
      }
      if (spec.gradient) {
        const RedGradient& g = *spec.gradient;
        const double t = g.axis == 0 ? double(i) / spec.grid_nx : double(j) / spec.grid_ny;
        const double r = g.start + (g.end - g.start) * t;
        v.color.r = static_cast<uint8_t>(std::clamp<long>(std::lround(r), 0, 255));
      }
      if (spec.noise_amplitude > 0) {
        const int r = v.color.r + UniformSymmetric(rng, spec.noise_amplitude);
        v.color.r = static_cast<uint8_t>(std::clamp(r, 0, 255));
      }
    }
  }

  mesh.faces.reserve(2ull * spec.grid_nx * spec.grid_ny);
  std::vector<uint32_t> gt_ids;
  for (int j = 0; j < spec.grid_ny; ++j) {
    for (int i = 0; i < spec.grid_nx; ++i) {
      const uint32_t v00 = static_cast<uint32_t>(j * nvx + i);
      const uint32_t v10 = v00 + 1;
      const uint32_t v01 = static_cast<uint32_t>(v00 + nvx);
      const uint32_t v11 = v01 + 1;
      for (const TriFace& f : {TriFace{{v00, v10, v11}}, TriFace{{v00, v11, v01}}}) {
        if (in_patch[f.v[0]] && in_patch[f.v[1]] && in_patch[f.v[2]]) {
          gt_ids.push_back(static_cast<uint32_t>(mesh.faces.size()));
        }
        mesh.faces.push_back(f);
      }
    }
  }
  out.gt = DamageLabeling::FromFaceIds(mesh, gt_ids);
  out.exact_patch_area = static_cast<double>(gt_ids.size()) * spec.cell_size * spec.cell_size / 2;
  return out;
}

SynthMaskPair GenerateMaskPair(const SynthMaskSpec& spec) {
  if (spec.width < 1 || spec.height < 1) Invalid("mask dimensions must be at least 1x1");
  for (const PixelRect* r : {&spec.gt, &spec.pred}) {
    if (r->x < 0 || r->y < 0 || r->w < 0 || r->h < 0 ||
        static_cast<int64_t>(r->x) + r->w > spec.width ||
        static_cast<int64_t>(r->y) + r->h > spec.height) {
      Invalid("rectangle outside the mask");
    }
  }
  auto paint = [&spec](const PixelRect& r) {
    BinaryMask m(spec.width, spec.height);
    for (int y = r.y; y < r.y + r.h; ++y) {
      for (int x = r.x; x < r.x + r.w; ++x) m.set(x, y, true);
    }
    return m;
  };
  const int64_t ox = std::max(0, std::min(spec.gt.x + spec.gt.w, spec.pred.x + spec.pred.w) -
                                     std::max(spec.gt.x, spec.pred.x));
  const int64_t oy = std::max(0, std::min(spec.gt.y + spec.gt.h, spec.pred.y + spec.pred.h) -
                                     std::max(spec.gt.y, spec.pred.y));
  const int64_t inter = ox * oy;
  const int64_t gt_area = int64_t{spec.gt.w} * spec.gt.h;
  const int64_t pred_area = int64_t{spec.pred.w} * spec.pred.h;
  return {paint(spec.pred), paint(spec.gt),
          MakeSegMetrics(static_cast<double>(inter), static_cast<double>(pred_area - inter),
                         static_cast<double>(gt_area - inter))};
}

}  // namespace jointdamage

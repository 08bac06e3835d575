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

#include <gtest/gtest.h>

#include <random>

#include "jointdamage/error.h"
#include "test_util.h"

namespace jointdamage {
namespace {

ErrorCode CodeOf(const SynthMeshSpec& spec) {
  try {
    GeneratePlaneMesh(spec);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIo;
}

TEST(PlaneMesh, FullPatchTenByThree) {
  SynthMeshSpec spec;
  spec.grid_nx = 10;
  spec.grid_ny = 3;
  spec.cell_size = 50;
  spec.patches = {{{0, 0, 10, 3}, 255}};
  const SynthMesh s = GeneratePlaneMesh(spec);
  EXPECT_EQ(s.mesh.NumVert(), 11u * 4);
  EXPECT_EQ(s.mesh.NumTri(), 60u);
  EXPECT_EQ(s.exact_patch_area, 75000.0);
  const DamageLabeling d = ClassifyDamage(s.mesh, 230);
  EXPECT_EQ(d.size(), 60u);
  EXPECT_NEAR(d.TotalArea(), 75000.0, 1e-9);
  EXPECT_EQ(d.face_ids(), s.gt.face_ids());
}

TEST(PlaneMesh, NoPatches) {
  SynthMeshSpec spec;
  const SynthMesh s = GeneratePlaneMesh(spec);
  EXPECT_TRUE(s.gt.empty());
  EXPECT_EQ(s.exact_patch_area, 0.0);
  EXPECT_TRUE(ClassifyDamage(s.mesh, 230).empty());
  for (const ColoredVertex& v : s.mesh.vertices) EXPECT_EQ(v.color, (Rgb{128, 128, 128}));
}

TEST(PlaneMesh, TotalAreaAndOrientation) {
  SynthMeshSpec spec;
  spec.grid_nx = 7;
  spec.grid_ny = 5;
  spec.cell_size = 1.5;
  const SynthMesh s = GeneratePlaneMesh(spec);
  double total = 0;
  for (size_t f = 0; f < s.mesh.NumTri(); ++f) {
    total += FaceArea(s.mesh, f);
    // Counter-clockwise seen from +z.
    const auto& v = s.mesh.faces[f].v;
    const auto& a = s.mesh.vertices[v[0]].position;
    const auto& b = s.mesh.vertices[v[1]].position;
    const auto& c = s.mesh.vertices[v[2]].position;
    EXPECT_GT((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]), 0);
  }
  EXPECT_NEAR(total, 7 * 5 * 1.5 * 1.5, 1e-9);
}

TEST(PlaneMesh, PatchIntensityAgainstThreshold) {
  SynthMeshSpec spec;
  spec.patches = {{{2, 2, 6, 5}, 200}};
  const SynthMesh s = GeneratePlaneMesh(spec);
  EXPECT_TRUE(ClassifyDamage(s.mesh, 230).empty());
  const DamageLabeling d = ClassifyDamage(s.mesh, 190);
  EXPECT_EQ(d.face_ids(), s.gt.face_ids());
  EXPECT_EQ(d.size(), 2u * 4 * 3);
  EXPECT_NEAR(d.TotalArea(), s.exact_patch_area, 1e-12);
}

TEST(PlaneMesh, GroundTruthMatchesVertexRule) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    SynthMeshSpec spec;
    spec.grid_nx = 1 + rng() % 20;
    spec.grid_ny = 1 + rng() % 20;
    const int np = rng() % 4;
    for (int k = 0; k < np; ++k) {
      const int x0 = rng() % spec.grid_nx, y0 = rng() % spec.grid_ny;
      const int x1 = x0 + 1 + rng() % (spec.grid_nx - x0), y1 = y0 + 1 + rng() % (spec.grid_ny - y0);
      spec.patches.push_back({{x0, y0, x1, y1}, 255});
    }
    const SynthMesh s = GeneratePlaneMesh(spec);
    EXPECT_EQ(s.gt.face_ids(), testing::NaiveClassify(s.mesh, 254));
    EXPECT_NEAR(s.gt.TotalArea(), s.exact_patch_area, 1e-9);
  }
}

TEST(PlaneMesh, TouchingPatchesShareEdgeFaces) {
  SynthMeshSpec spec;
  spec.grid_nx = 6;
  spec.grid_ny = 2;
  spec.patches = {{{0, 0, 3, 2}, 255}, {{3, 0, 6, 2}, 255}};
  const SynthMesh s = GeneratePlaneMesh(spec);
  EXPECT_EQ(s.gt.size(), s.mesh.NumTri());
}

TEST(PlaneMesh, ConflictingPatches) {
  SynthMeshSpec spec;
  spec.patches = {{{0, 0, 3, 3}, 255}, {{3, 3, 5, 5}, 240}};
  EXPECT_EQ(CodeOf(spec), ErrorCode::kConflictingPatches);
  spec.patches[1].red = 255;
  EXPECT_NO_THROW(GeneratePlaneMesh(spec));
}

TEST(PlaneMesh, InvalidSpecs) {
  SynthMeshSpec spec;
  spec.grid_nx = 0;
  EXPECT_EQ(CodeOf(spec), ErrorCode::kInvalidArgument);
  spec = SynthMeshSpec();
  spec.cell_size = 0;
  EXPECT_EQ(CodeOf(spec), ErrorCode::kInvalidArgument);
  spec = SynthMeshSpec();
  spec.patches = {{{0, 0, 11, 1}, 255}};
  EXPECT_EQ(CodeOf(spec), ErrorCode::kInvalidArgument);
  spec.patches = {{{2, 2, 2, 4}, 255}};
  EXPECT_EQ(CodeOf(spec), ErrorCode::kInvalidArgument);
  spec.patches = {{{0, 0, 1, 1}, 300}};
  EXPECT_EQ(CodeOf(spec), ErrorCode::kInvalidArgument);
  spec = SynthMeshSpec();
  spec.gradient = RedGradient{2, 0, 255};
  EXPECT_EQ(CodeOf(spec), ErrorCode::kInvalidArgument);
}

TEST(PlaneMesh, GradientAlongX) {
  SynthMeshSpec spec;
  spec.grid_nx = 255;
  spec.grid_ny = 1;
  spec.gradient = RedGradient{0, 0, 255};
  const SynthMesh s = GeneratePlaneMesh(spec);
  for (int i = 0; i <= 255; ++i) EXPECT_EQ(s.mesh.vertices[i].color.r, i);
  // Cells i..i+1 are damaged when both reds exceed t, i.e. i > t.
  for (int t : {0, 100, 254}) EXPECT_EQ(ClassifyDamage(s.mesh, t).size(), 2u * (254 - t));
}

TEST(PlaneMesh, NoiseDeterministicAndBounded) {
  SynthMeshSpec spec;
  spec.grid_nx = 30;
  spec.grid_ny = 30;
  spec.noise_amplitude = 5;
  spec.noise_seed = 77;
  const SynthMesh a = GeneratePlaneMesh(spec);
  EXPECT_EQ(a.mesh, GeneratePlaneMesh(spec).mesh);
  bool varied = false;
  for (const ColoredVertex& v : a.mesh.vertices) {
    EXPECT_GE(v.color.r, 123);
    EXPECT_LE(v.color.r, 133);
    EXPECT_EQ(v.color.g, 128);
    varied |= v.color.r != 128;
  }
  EXPECT_TRUE(varied);
  spec.noise_seed = 78;
  EXPECT_NE(a.mesh, GeneratePlaneMesh(spec).mesh);
}

TEST(MaskPair, OffsetSquares) {
  SynthMaskSpec spec;
  spec.width = 32;
  spec.height = 32;
  spec.gt = {0, 0, 10, 10};
  spec.pred = {5, 0, 10, 10};
  const SynthMaskPair p = GenerateMaskPair(spec);
  EXPECT_EQ(p.expected.tp, 50);
  EXPECT_EQ(p.expected.fp, 50);
  EXPECT_EQ(p.expected.fn, 50);
  const SegMetrics m = Metrics2d(p.pred, p.gt);
  EXPECT_EQ(m.tp, 50);
  EXPECT_EQ(m.recall, 0.5);
  EXPECT_EQ(m.error, 0.5);
}

TEST(MaskPair, ClosedFormMatchesPixelCount) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    SynthMaskSpec spec;
    spec.width = 1 + rng() % 40;
    spec.height = 1 + rng() % 40;
    for (PixelRect* r : {&spec.gt, &spec.pred}) {
      r->x = rng() % spec.width;
      r->y = rng() % spec.height;
      r->w = rng() % (spec.width - r->x + 1);
      r->h = rng() % (spec.height - r->y + 1);
    }
    const SynthMaskPair p = GenerateMaskPair(spec);
    const SegMetrics m = Metrics2d(p.pred, p.gt);
    EXPECT_EQ(m.tp, p.expected.tp);
    EXPECT_EQ(m.fp, p.expected.fp);
    EXPECT_EQ(m.fn, p.expected.fn);
    EXPECT_EQ(m.recall, p.expected.recall);
  }
}

TEST(MaskPair, RejectsOutOfBounds) {
  SynthMaskSpec spec;
  spec.gt = {30, 0, 5, 5};
  EXPECT_THROW(GenerateMaskPair(spec), Error);
}

}  // namespace
}  // namespace jointdamage

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
#include <optional>
#include <span>
#include <vector>

#include "jointdamage/mesh.h"

namespace jointdamage {

/// Sum with pairwise (cascade) reduction; error grows with log n rather
/// than n.
double PairwiseSum(std::span<const double> values);

/// Area of one face in scaled units: |(b-a) x (c-a)| / 2 * scale^2.
double FaceArea(const TriMesh& mesh, size_t face, double coordinate_scale = 1);

/**
 * A set of faces of one mesh together with their areas.
 *
 * Face ids are kept sorted and unique. Each area equals
 * FaceArea(mesh, id, coordinate_scale()) for the mesh the labeling was built
 * from; the mesh is identified by its geometry fingerprint so that two
 * labelings can be checked to refer to the same surface.
 */
class DamageLabeling {
 public:
  DamageLabeling() = default;

  /// Throws kIndexOutOfRange for an id >= mesh.NumTri(), kInvalidArgument
  /// for a non-positive scale. Duplicate ids are collapsed.
  static DamageLabeling FromFaceIds(const TriMesh& mesh,
                                    std::span<const uint32_t> face_ids,
                                    double coordinate_scale = 1);

  const std::vector<uint32_t>& face_ids() const { return face_ids_; }
  const std::vector<double>& face_areas() const { return face_areas_; }
  double coordinate_scale() const { return coordinate_scale_; }
  uint64_t mesh_fingerprint() const { return mesh_fingerprint_; }
  size_t size() const { return face_ids_.size(); }
  bool empty() const { return face_ids_.empty(); }

  bool Contains(uint32_t face) const;
  double TotalArea() const { return PairwiseSum(face_areas_); }

 private:
  std::vector<uint32_t> face_ids_;
  std::vector<double> face_areas_;
  double coordinate_scale_ = 1;
  uint64_t mesh_fingerprint_ = 0;
};

struct ClassifyOptions {
  double coordinate_scale = 1;
  /// Additionally require red > green and red > blue at every vertex.
  bool red_dominance = false;
  /// 0 picks std::thread::hardware_concurrency(). The result does not
  /// depend on this value.
  unsigned num_threads = 0;
};

/**
 * Marks a face as damaged when the red channel of all three of its vertices
 * is strictly greater than `threshold` (0-255). At 255 nothing qualifies.
 *
 * Throws kColorlessMesh if the mesh has no vertex colors and
 * kInvalidArgument for a threshold outside 0-255.
 */
DamageLabeling ClassifyDamage(const TriMesh& mesh, int threshold,
                              const ClassifyOptions& options = {});

/// Faces whose three vertices are each within `tolerance` of `key` on every
/// channel, e.g. the yellow (255,255,0) of a manually segmented mesh.
DamageLabeling GroundTruthFromColor(const TriMesh& mesh, Rgb key,
                                    int tolerance,
                                    double coordinate_scale = 1);

struct JdiParams {
  double sawcut_length = 500;  // mm
  double d_max = 25;           // mm, maximum aggregate size
  double coordinate_scale = 1;
  int threshold = 230;

  /// Projected reference area 3 * sawcut_length * d_max, in mm^2.
  double Denominator() const { return 3 * sawcut_length * d_max; }

  /// Throws kInvalidArgument unless lengths and scale are positive and
  /// finite and the threshold lies in 0-255.
  void Validate() const;
};

struct JdiReport {
  double damage_area = 0;  // mm^2
  double denominator = 0;  // mm^2
  double jdi = 0;          // percent
  JdiParams params;
  size_t damaged_face_count = 0;
};

/// Joint damage index: 100 * total damaged area / (3 * L * D_max).
/// The labeling's coordinate scale must equal params.coordinate_scale.
JdiReport ComputeJdi(const DamageLabeling& labeling, const JdiParams& params);

/// Confusion magnitudes (mm^2 in 3D, pixel counts in 2D) and the derived
/// ratios. recall and error are unset when the ground truth is empty.
struct SegMetrics {
  double tp = 0;
  double fp = 0;
  double fn = 0;
  std::optional<double> recall;
  std::optional<double> error;

  double gt_d() const { return tp + fn; }
  bool defined() const { return recall.has_value(); }
};

/// recall = tp / (tp + fn), error = fp / (tp + fn).
SegMetrics MakeSegMetrics(double tp, double fp, double fn);

/// Area-weighted comparison of two labelings of `mesh`. Throws
/// kMeshMismatch if either labeling was built from different geometry or
/// with a different coordinate scale.
SegMetrics Metrics3d(const DamageLabeling& pred, const DamageLabeling& gt,
                     const TriMesh& mesh);

struct SweepRow {
  int threshold = 0;
  SegMetrics metrics;
  double jdi = 0;
};

/// classify -> metrics -> JDI at each threshold. Rows come back sorted by
/// threshold (stable for repeats); `base.threshold` is ignored.
std::vector<SweepRow> ThresholdSweep(const TriMesh& mesh,
                                     const DamageLabeling& gt,
                                     std::span<const int> thresholds,
                                     const JdiParams& base = {},
                                     bool red_dominance = false);

}  // namespace jointdamage

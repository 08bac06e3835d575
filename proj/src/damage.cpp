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

#include "jointdamage/damage.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "jointdamage/error.h"
#include "parallel.h"

namespace jointdamage {
namespace {

constexpr size_t kPairwiseBlock = 128;
constexpr size_t kMinFacesPerThread = 1 << 15;

void CheckScale(double scale) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidArgument, "coordinate scale must be positive and finite");
  }
}

void CheckThreshold(int threshold) {
  if (threshold < 0 || threshold > 255) {
    throw Error(ErrorCode::kInvalidArgument,
                "threshold " + std::to_string(threshold) + " outside 0-255");
  }
}

double UnscaledArea(const TriMesh& mesh, const TriFace& f) {
  const auto& a = mesh.vertices[f.v[0]].position;
  const auto& b = mesh.vertices[f.v[1]].position;
  const auto& c = mesh.vertices[f.v[2]].position;
  const double e1[3] = {double(b[0]) - a[0], double(b[1]) - a[1], double(b[2]) - a[2]};
  const double e2[3] = {double(c[0]) - a[0], double(c[1]) - a[1], double(c[2]) - a[2]};
  const double cx = e1[1] * e2[2] - e1[2] * e2[1];
  const double cy = e1[2] * e2[0] - e1[0] * e2[2];
  const double cz = e1[0] * e2[1] - e1[1] * e2[0];
  return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

template <typename Pred>
DamageLabeling LabelFaces(const TriMesh& mesh, double scale, unsigned num_threads, Pred&& pred) {
  std::vector<uint8_t> hit(mesh.NumTri(), 0);
  ParallelFor(mesh.NumTri(), num_threads, kMinFacesPerThread, [&](size_t begin, size_t end) {
    for (size_t f = begin; f < end; ++f) {
      const TriFace& face = mesh.faces[f];
      hit[f] = pred(mesh.vertices[face.v[0]].color) && pred(mesh.vertices[face.v[1]].color) &&
               pred(mesh.vertices[face.v[2]].color);
    }
  });
  std::vector<uint32_t> ids;
  for (size_t f = 0; f < hit.size(); ++f) {
    if (hit[f]) ids.push_back(static_cast<uint32_t>(f));
  }
  return DamageLabeling::FromFaceIds(mesh, ids, scale);
}

}  // namespace

double PairwiseSum(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double s = 0;
    for (double v : values) s += v;
    return s;
  }
  const size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

double FaceArea(const TriMesh& mesh, size_t face, double coordinate_scale) {
  if (face >= mesh.NumTri()) {
    throw Error(ErrorCode::kIndexOutOfRange, "face " + std::to_string(face) + " out of range");
  }
  CheckScale(coordinate_scale);
  return UnscaledArea(mesh, mesh.faces[face]) * coordinate_scale * coordinate_scale;
}

DamageLabeling DamageLabeling::FromFaceIds(const TriMesh& mesh, std::span<const uint32_t> face_ids,
                                           double coordinate_scale) {
  CheckScale(coordinate_scale);
  DamageLabeling out;
  out.face_ids_.assign(face_ids.begin(), face_ids.end());
  if (!std::is_sorted(out.face_ids_.begin(), out.face_ids_.end())) {
    std::sort(out.face_ids_.begin(), out.face_ids_.end());
  }
  out.face_ids_.erase(std::unique(out.face_ids_.begin(), out.face_ids_.end()),
                      out.face_ids_.end());
  if (!out.face_ids_.empty() && out.face_ids_.back() >= mesh.NumTri()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "face id " + std::to_string(out.face_ids_.back()) + " but mesh has " +
                    std::to_string(mesh.NumTri()) + " faces");
  }
  const double s2 = coordinate_scale * coordinate_scale;
  out.face_areas_.reserve(out.face_ids_.size());
  for (uint32_t id : out.face_ids_) {
    out.face_areas_.push_back(UnscaledArea(mesh, mesh.faces[id]) * s2);
  }
  out.coordinate_scale_ = coordinate_scale;
  out.mesh_fingerprint_ = GeometryFingerprint(mesh);
  return out;
}

bool DamageLabeling::Contains(uint32_t face) const {
  return std::binary_search(face_ids_.begin(), face_ids_.end(), face);
}

DamageLabeling ClassifyDamage(const TriMesh& mesh, int threshold, const ClassifyOptions& options) {
  if (!mesh.has_vertex_colors) {
    throw Error(ErrorCode::kColorlessMesh, "mesh has no vertex colors to threshold");
  }
  CheckThreshold(threshold);
  CheckScale(options.coordinate_scale);
  ValidateMesh(mesh);
  if (options.red_dominance) {
    return LabelFaces(mesh, options.coordinate_scale, options.num_threads, [threshold](Rgb c) {
      return c.r > threshold && c.r > c.g && c.r > c.b;
    });
  }
  return LabelFaces(mesh, options.coordinate_scale, options.num_threads,
                    [threshold](Rgb c) { return c.r > threshold; });
}

DamageLabeling GroundTruthFromColor(const TriMesh& mesh, Rgb key, int tolerance,
                                    double coordinate_scale) {
  if (!mesh.has_vertex_colors) {
    throw Error(ErrorCode::kColorlessMesh, "mesh has no vertex colors to match");
  }
  if (tolerance < 0 || tolerance > 255) {
    throw Error(ErrorCode::kInvalidArgument, "color tolerance outside 0-255");
  }
  CheckScale(coordinate_scale);
  ValidateMesh(mesh);
  return LabelFaces(mesh, coordinate_scale, 0, [key, tolerance](Rgb c) {
    return std::abs(c.r - key.r) <= tolerance && std::abs(c.g - key.g) <= tolerance &&
           std::abs(c.b - key.b) <= tolerance;
  });
}

void JdiParams::Validate() const {
  if (!(sawcut_length > 0) || !std::isfinite(sawcut_length)) {
    throw Error(ErrorCode::kInvalidArgument, "sawcut length must be positive");
  }
  if (!(d_max > 0) || !std::isfinite(d_max)) {
    throw Error(ErrorCode::kInvalidArgument, "maximum aggregate size must be positive");
  }
  CheckScale(coordinate_scale);
  CheckThreshold(threshold);
}

JdiReport ComputeJdi(const DamageLabeling& labeling, const JdiParams& params) {
  params.Validate();
  if (labeling.coordinate_scale() != params.coordinate_scale) {
    throw Error(ErrorCode::kInvalidArgument,
                "labeling areas were computed with a different coordinate scale");
  }
  JdiReport report;
  report.params = params;
  report.damage_area = labeling.TotalArea();
  report.denominator = params.Denominator();
  report.jdi = 100 * report.damage_area / report.denominator;
  report.damaged_face_count = labeling.size();
  return report;
}

SegMetrics MakeSegMetrics(double tp, double fp, double fn) {
  SegMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  const double gt = tp + fn;
  if (gt > 0) {
    m.recall = tp / gt;
    m.error = fp / gt;
  }
  return m;
}

SegMetrics Metrics3d(const DamageLabeling& pred, const DamageLabeling& gt, const TriMesh& mesh) {
  const uint64_t fp_mesh = GeometryFingerprint(mesh);
  if (pred.mesh_fingerprint() != fp_mesh || gt.mesh_fingerprint() != fp_mesh) {
    throw Error(ErrorCode::kMeshMismatch, "labelings do not refer to the given mesh");
  }
  if (pred.coordinate_scale() != gt.coordinate_scale()) {
    throw Error(ErrorCode::kMeshMismatch, "labelings use different coordinate scales");
  }
  std::vector<double> tp, fp, fn;
  const auto& p_ids = pred.face_ids();
  const auto& g_ids = gt.face_ids();
  size_t i = 0, j = 0;
  while (i < p_ids.size() || j < g_ids.size()) {
    if (j == g_ids.size() || (i < p_ids.size() && p_ids[i] < g_ids[j])) {
      fp.push_back(pred.face_areas()[i++]);
    } else if (i == p_ids.size() || g_ids[j] < p_ids[i]) {
      fn.push_back(gt.face_areas()[j++]);
    } else {
      tp.push_back(pred.face_areas()[i]);
      ++i;
      ++j;
    }
  }
  return MakeSegMetrics(PairwiseSum(tp), PairwiseSum(fp), PairwiseSum(fn));
}

std::vector<SweepRow> ThresholdSweep(const TriMesh& mesh, const DamageLabeling& gt,
                                     std::span<const int> thresholds, const JdiParams& base,
                                     bool red_dominance) {
  if (thresholds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "threshold list is empty");
  }
  std::vector<int> sorted(thresholds.begin(), thresholds.end());
  std::stable_sort(sorted.begin(), sorted.end());
  for (int t : sorted) CheckThreshold(t);

  std::vector<SweepRow> rows;
  rows.reserve(sorted.size());
  for (int t : sorted) {
    JdiParams params = base;
    params.threshold = t;
    ClassifyOptions opts;
    opts.coordinate_scale = base.coordinate_scale;
    opts.red_dominance = red_dominance;
    const DamageLabeling pred = ClassifyDamage(mesh, t, opts);
    SweepRow row;
    row.threshold = t;
    row.metrics = Metrics3d(pred, gt, mesh);
    row.jdi = ComputeJdi(pred, params).jdi;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace jointdamage

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

#include "jointdamage/report.h"

#include <charconv>
#include <cstdio>

#include "jointdamage/error.h"

namespace jointdamage {
namespace {

using nlohmann::json;

json Optional(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string CsvNumber(double v) {
  char buf[32];
  int n = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, n);
}

template <typename T>
T Field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kInvalidArgument, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T Required(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::kInvalidArgument, std::string("missing field '") + key + "'");
  }
  return Field<T>(j, key, T{});
}

void RequireObject(const json& j, const char* what) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be an object");
}

PixelRect RectFromJson(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::kInvalidArgument, std::string("missing '") + key + "'");
  const json& r = j.at(key);
  RequireObject(r, key);
  return {Required<int>(r, "x"), Required<int>(r, "y"), Required<int>(r, "w"), Required<int>(r, "h")};
}

}  // namespace

json ToJson(const JdiParams& params) {
  return {{"sawcut_length", params.sawcut_length},
          {"d_max", params.d_max},
          {"coordinate_scale", params.coordinate_scale},
          {"threshold", params.threshold}};
}

json ToJson(const JdiReport& report) {
  return {{"schema", kReportSchema},
          {"damage_area", report.damage_area},
          {"denominator", report.denominator},
          {"jdi", report.jdi},
          {"damaged_face_count", report.damaged_face_count},
          {"params", ToJson(report.params)}};
}

json ToJson(const SegMetrics& m) {
  return {{"schema", kReportSchema}, {"tp", m.tp},
          {"fp", m.fp},              {"fn", m.fn},
          {"gt_d", m.gt_d()},        {"recall", Optional(m.recall)},
          {"error", Optional(m.error)}, {"defined", m.defined()}};
}

std::string SweepToCsv(std::span<const SweepRow> rows) {
  std::string out = "threshold,recall,error,jdi_percent\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.threshold) + ',';
    if (r.metrics.recall) out += CsvNumber(*r.metrics.recall);
    out += ',';
    if (r.metrics.error) out += CsvNumber(*r.metrics.error);
    out += ',' + CsvNumber(r.jdi) + '\n';
  }
  return out;
}

std::vector<uint32_t> ParseFaceList(std::string_view text) {
  std::vector<uint32_t> ids;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    uint32_t id;
    auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), id);
    if (ec != std::errc() || p != line.data() + line.size()) {
      throw Error(ErrorCode::kMalformedData,
                  "face list line " + std::to_string(line_no) + " is not a face index");
    }
    ids.push_back(id);
  }
  return ids;
}

std::string FormatFaceList(std::span<const uint32_t> face_ids) {
  std::string out = "# face indices, one per line\n";
  for (uint32_t id : face_ids) out += std::to_string(id) + '\n';
  return out;
}

SynthMeshSpec SynthMeshSpecFromJson(const json& j) {
  RequireObject(j, "mesh spec");
  SynthMeshSpec spec;
  spec.grid_nx = Required<int>(j, "grid_nx");
  spec.grid_ny = Required<int>(j, "grid_ny");
  spec.cell_size = Field<double>(j, "cell_size", spec.cell_size);
  spec.background_red = Field<int>(j, "background_red", spec.background_red);
  spec.noise_amplitude = Field<int>(j, "noise_amplitude", spec.noise_amplitude);
  spec.noise_seed = Field<uint64_t>(j, "noise_seed", spec.noise_seed);
  if (j.contains("patches")) {
    const json& patches = j.at("patches");
    if (!patches.is_array()) throw Error(ErrorCode::kInvalidArgument, "patches must be an array");
    for (const json& p : patches) {
      RequireObject(p, "patch");
      DamagePatch patch;
      patch.cells = {Required<int>(p, "x0"), Required<int>(p, "y0"), Required<int>(p, "x1"),
                     Required<int>(p, "y1")};
      patch.red = Field<int>(p, "red", patch.red);
      spec.patches.push_back(patch);
    }
  }
  if (j.contains("gradient") && !j.at("gradient").is_null()) {
    const json& g = j.at("gradient");
    RequireObject(g, "gradient");
    RedGradient grad;
    grad.axis = Field<int>(g, "axis", grad.axis);
    grad.start = Required<double>(g, "start");
    grad.end = Required<double>(g, "end");
    spec.gradient = grad;
  }
  return spec;
}

SynthMaskSpec SynthMaskSpecFromJson(const json& j) {
  RequireObject(j, "mask spec");
  SynthMaskSpec spec;
  spec.width = Required<int>(j, "width");
  spec.height = Required<int>(j, "height");
  spec.gt = RectFromJson(j, "gt");
  spec.pred = RectFromJson(j, "pred");
  return spec;
}

}  // namespace jointdamage

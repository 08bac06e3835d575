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

// Text interchange: JSON reports, sweep CSV, ground-truth face lists and
// synthetic scene specs.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "jointdamage/damage.h"
#include "jointdamage/synth.h"

namespace jointdamage {

inline constexpr int kReportSchema = 1;

nlohmann::json ToJson(const JdiParams& params);
nlohmann::json ToJson(const JdiReport& report);
/// recall / error are null when undefined; "defined" says which.
nlohmann::json ToJson(const SegMetrics& metrics);

/// Header `threshold,recall,error,jdi_percent`; undefined ratios are left
/// empty.
std::string SweepToCsv(std::span<const SweepRow> rows);

/// One face index per line. Blank lines and anything after '#' are ignored.
/// Throws kMalformedData on a line that is not a non-negative integer.
std::vector<uint32_t> ParseFaceList(std::string_view text);
std::string FormatFaceList(std::span<const uint32_t> face_ids);

/// Throws kInvalidArgument on missing or ill-typed fields.
SynthMeshSpec SynthMeshSpecFromJson(const nlohmann::json& j);
SynthMaskSpec SynthMaskSpecFromJson(const nlohmann::json& j);

}  // namespace jointdamage

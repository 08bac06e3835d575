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

#include <stdexcept>
#include <string>

namespace jointdamage {

enum class ErrorCode {
  kMalformedHeader,
  kUnsupportedFormat,
  kMalformedData,
  kNonTriangularFace,
  kIndexOutOfRange,
  kColorlessMesh,
  kInvalidArgument,
  kDimensionMismatch,
  kMeshMismatch,
  kConflictingPatches,
  kIo,
};

/// Stable snake_case name, used in CLI and JSON error reports.
const char* ErrorCodeName(ErrorCode code);

/// Every failure raised by the library. Anything that is not kIo is a
/// problem with the input itself rather than with the environment.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }
  bool IsIo() const { return code_ == ErrorCode::kIo; }

 private:
  ErrorCode code_;
};

}  // namespace jointdamage

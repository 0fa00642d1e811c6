// Copyright 2026 The bless-iqa Authors. All Rights Reserved.
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

namespace bless {

enum class Errc {
  kUnsupportedFormat,
  kCorruptStream,
  kNonPositiveGamma,
  kEmptyPlane,
  kTooManyScales,
  kMalformedPyramid,
  kDepthTooLarge,
  kUnknownChannelClass,
  kDimensionMismatch,
  kEmptyMap,
  kImageTooSmall,
  kKindMismatch,
  kZeroWeightMass,
  kDegenerateMap,
  kMissingColumn,
  kUnknownDistortionCode,
  kFileNotFound,
  kLengthMismatch,
  kDegenerateInput,
  kSampleTooSmall,
  kPerfectCorrelation,
  kEmptyCategory,
  kInvalidArgument,
  kIoError,
  kConfigError,
};

const char* to_string(Errc code);

// All library failures surface as this exception; code() identifies the
// failure class so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bless

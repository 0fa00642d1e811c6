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

#include "bless/error.hpp"

namespace bless {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::kUnsupportedFormat: return "UnsupportedFormat";
    case Errc::kCorruptStream: return "CorruptStream";
    case Errc::kNonPositiveGamma: return "NonPositiveGamma";
    case Errc::kEmptyPlane: return "EmptyPlane";
    case Errc::kTooManyScales: return "TooManyScales";
    case Errc::kMalformedPyramid: return "MalformedPyramid";
    case Errc::kDepthTooLarge: return "DepthTooLarge";
    case Errc::kUnknownChannelClass: return "UnknownChannelClass";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kEmptyMap: return "EmptyMap";
    case Errc::kImageTooSmall: return "ImageTooSmall";
    case Errc::kKindMismatch: return "KindMismatch";
    case Errc::kZeroWeightMass: return "ZeroWeightMass";
    case Errc::kDegenerateMap: return "DegenerateMap";
    case Errc::kMissingColumn: return "MissingColumn";
    case Errc::kUnknownDistortionCode: return "UnknownDistortionCode";
    case Errc::kFileNotFound: return "FileNotFound";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kDegenerateInput: return "DegenerateInput";
    case Errc::kSampleTooSmall: return "SampleTooSmall";
    case Errc::kPerfectCorrelation: return "PerfectCorrelation";
    case Errc::kEmptyCategory: return "EmptyCategory";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIoError: return "IoError";
    case Errc::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace bless

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

#include "bless/plane.hpp"

namespace bless {

enum class FeatureKind { kGm, kPc, kSr, kTau, kIChroma, kQChroma };

const char* to_string(FeatureKind kind) noexcept;

// Raw per-image feature. GM, SR and TAU are >= 0, PC is in [0, 1], the
// chroma kinds are signed.
struct FeatureMap {
  FeatureKind kind;
  Plane grid;
};

// Per-pixel similarity of two feature maps, values in (0, 1].
struct SimilarityMap {
  Plane grid;
};

// Euclidean norm over the three reconstructed opponent channels.
struct SpatiochromaticMap {
  Plane tau;
};

}  // namespace bless

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

#include <cstddef>
#include <optional>

#include "bless/image.hpp"
#include "bless/maps.hpp"
#include "bless/plane.hpp"

namespace bless {

enum class ChannelClass { kAchromatic, kChromatic };

// One contrast sensitivity profile over scale: a Gaussian bump centred on
// peak_scale. The multiplicative term has height `gain`, the lower-bound
// term height `floor_gain`.
struct EcsfParams {
  double peak_scale;
  double spread;
  double gain;
  double floor_gain;
};

// Defaults are configuration, not fitted psychophysics: the achromatic
// profile peaks at scale 3, the chromatic one a scale coarser, both with
// unit gain.
struct EcsfConfig {
  EcsfParams achromatic{3.0, 1.25, 1.0, 0.25};
  EcsfParams chromatic{4.0, 1.25, 1.0, 0.25};
  // Absolute lower bound on the floor term, keeps alpha > 0 far from the peak.
  double min_floor = 1e-3;

  const EcsfParams& params(ChannelClass cls) const;
  void validate() const;
};

enum class LevelReduction { kSum, kMean };

struct TauConfig {
  double gamma = kDefaultGamma;
  std::optional<std::size_t> scales;          // default_wavelet_scales when empty
  std::optional<std::size_t> grouplet_depth;  // default_grouplet_depth when empty
  double surround_factor = 3.0;               // window radius = ceil(factor * 2^(s-1))
  LevelReduction reduction = LevelReduction::kSum;
  EcsfConfig ecsf;
};

std::size_t surround_radius(std::size_t scale, double surround_factor);

// z = c^2 / (c^2 + u^2), c the coefficient, u the RMS of the surrounding
// window excluding the centre. z = 0 where c = 0.
Plane surround_contrast(const Plane& detail, std::size_t scale, double surround_factor = 3.0);

// Multiplicative and floor terms of the ECSF at a scale.
double ecsf_gain(std::size_t scale, ChannelClass cls, const EcsfConfig& cfg);
double ecsf_floor(std::size_t scale, ChannelClass cls, const EcsfConfig& cfg);

// alpha = z * gain(s) + floor(s).
Plane ecsf_adjust(const Plane& z, std::size_t scale, ChannelClass cls, const EcsfConfig& cfg);

// Spatiochromatic grouping map of an sRGB image.
SpatiochromaticMap compute_tau(const PlanarImage& srgb, const TauConfig& cfg = {});

// Reconstructed (signed) opponent channel i in {0, 1, 2} before pooling.
Plane compute_tau_channel(const Plane& opponent_channel, ChannelClass cls, const TauConfig& cfg);

inline constexpr double kTauSimilarityConstant = 0.4;

SimilarityMap bless_map(const SpatiochromaticMap& ref, const SpatiochromaticMap& dist,
                        double c1 = kTauSimilarityConstant);
double bless_score(const SimilarityMap& map);

}  // namespace bless

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

#include "bless/maps.hpp"
#include "bless/plane.hpp"

namespace bless {

// Similarity constants per feature, one value per estimator family.
struct SimilarityConstants {
  static constexpr double kGmFsim = 160.0;
  static constexpr double kGmSrsim = 225.0;
  static constexpr double kPc = 0.85;
  static constexpr double kSr = 0.4;
  static constexpr double kTau = 0.4;
};

enum class GradientOperator { kScharr, kSobel };

// Both operators are normalised so a unit-slope ramp gives a component
// of 2 (central difference over two pixels).
FeatureMap gradient_magnitude(const Plane& luma, GradientOperator op = GradientOperator::kScharr);

// Log-Gabor phase congruency, Kovesi formulation with the FSIM reference
// settings.
struct PcParams {
  std::size_t scales = 4;
  std::size_t orientations = 4;
  double min_wavelength = 6.0;
  double mult = 2.0;
  double sigma_on_f = 0.55;
  double d_theta_on_sigma = 1.2;
  double k = 2.0;  // noise threshold in standard deviations
  double epsilon = 1e-4;
  double lowpass_cutoff = 0.45;
  int lowpass_order = 15;
};

inline constexpr std::size_t kMinPhaseCongruencySize = 32;

FeatureMap phase_congruency(const Plane& luma, const PcParams& params = {});

// Spectral residual saliency.
struct SrParams {
  std::size_t analysis_size = 64;  // square analysis grid
  std::size_t box = 3;             // log-spectrum smoothing window
  double sigma = 2.5;              // output smoothing
};

// Resize to the analysis grid, remove the mean (DC), take the log
// amplitude spectrum, subtract its local average, transform back with the
// original phase, square, smooth, stretch to [0, 1] and resize back.
// Spectral bins below a tolerance tied to the input magnitude carry no
// saliency, so a flat input maps to zero.
FeatureMap spectral_residual(const Plane& luma, const SrParams& params = {});

// (2 f g + c) / (f^2 + g^2 + c) per pixel.
SimilarityMap similarity_map(const FeatureMap& ref, const FeatureMap& dist, double c);

}  // namespace bless

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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bless/features.hpp"
#include "bless/image.hpp"
#include "bless/maps.hpp"
#include "bless/spatiochromatic.hpp"

namespace bless {

enum class Estimator { kFsim, kFsimc, kSrsim, kBlessFsim, kBlessFsimc, kBlessSrsim, kBless };

inline constexpr std::array<Estimator, 6> kPairedEstimators = {
    Estimator::kFsim,      Estimator::kFsimc,      Estimator::kSrsim,
    Estimator::kBlessFsim, Estimator::kBlessFsimc, Estimator::kBlessSrsim};
inline constexpr std::array<Estimator, 7> kAllEstimators = {
    Estimator::kFsim,      Estimator::kFsimc,      Estimator::kSrsim, Estimator::kBlessFsim,
    Estimator::kBlessFsimc, Estimator::kBlessSrsim, Estimator::kBless};

const char* to_string(Estimator e) noexcept;
// Case-insensitive; "SR-SIM" and "BLESS-FSIM" style spellings also accepted.
std::optional<Estimator> parse_estimator(std::string_view name);

// Exponents used when fusing similarity maps.
struct FusionConstants {
  static constexpr double kChroma = 0.03;  // (S_I * S_Q)^c2 in FSIMc
  static constexpr double kBless = 0.3;    // BLeSS^c3 in assisted FSIMc
  static constexpr double kSrsim = 0.5;    // gradient exponent in SR-SIM
};

enum class LumaSource { kY, kI3 };

struct MetricConfig {
  bool downsample = true;
  LumaSource luma = LumaSource::kY;
  GradientOperator fsim_gradient = GradientOperator::kScharr;
  GradientOperator srsim_gradient = GradientOperator::kSobel;
  double chroma_constant = 200.0;  // S_I, S_Q constant of the FSIMc reference code
  PcParams pc;
  SrParams sr;
  TauConfig tau;
};

struct QualityResult {
  Estimator estimator;
  double score;
  Plane feature_map;  // F
  Plane weight_map;   // W
};

// Per-image features at metric resolution. Luma and chroma are on the
// 0..255 scale the similarity constants were tuned for.
struct ImageFeatures {
  Plane luma;
  Plane chroma_i;
  Plane chroma_q;
  std::optional<FeatureMap> gm_fsim;
  std::optional<FeatureMap> gm_srsim;
  std::optional<FeatureMap> pc;
  std::optional<FeatureMap> sr;
  std::optional<SpatiochromaticMap> tau;
};

struct FeatureNeeds {
  bool gm_fsim = false;
  bool gm_srsim = false;
  bool pc = false;
  bool sr = false;
  bool chroma = false;
  bool tau = false;
};

FeatureNeeds needs_for(std::span<const Estimator> estimators);

// Applies the metric downsampling when enabled.
PlanarImage prepare_for_metric(const PlanarImage& srgb, const MetricConfig& cfg);

// `srgb` must already be at metric resolution.
ImageFeatures extract_features(const PlanarImage& srgb, const FeatureNeeds& needs, const MetricConfig& cfg);

QualityResult evaluate(Estimator e, const ImageFeatures& ref, const ImageFeatures& dist, const MetricConfig& cfg);

// sum(F * W) / sum(W), row-major accumulation.
double weighted_pool(const Plane& f, const Plane& w);

// Full-resolution entry points: downsample, extract, evaluate.
QualityResult fsim(const PlanarImage& ref, const PlanarImage& dist, bool use_bless, const MetricConfig& cfg = {});
QualityResult fsimc(const PlanarImage& ref, const PlanarImage& dist, bool use_bless, const MetricConfig& cfg = {});
QualityResult srsim(const PlanarImage& ref, const PlanarImage& dist, bool use_bless, const MetricConfig& cfg = {});
QualityResult bless_only(const PlanarImage& ref, const PlanarImage& dist, const MetricConfig& cfg = {});

std::vector<QualityResult> score_pair(const PlanarImage& ref, const PlanarImage& dist,
                                      std::span<const Estimator> estimators, const MetricConfig& cfg = {});

// ((F - mean) / max(F - mean))^5, stretched to [0, 1] for display.
Plane visualize_map(const Plane& f);

// Principal real part of base^exponent; equals pow for positive bases.
double real_power(double base, double exponent) noexcept;

}  // namespace bless

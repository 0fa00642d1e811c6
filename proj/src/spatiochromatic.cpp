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

#include "bless/spatiochromatic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bless/error.hpp"
#include "bless/grouplet.hpp"
#include "bless/kernels.hpp"
#include "bless/resample.hpp"
#include "bless/wavelet.hpp"

namespace bless {

const char* to_string(FeatureKind kind) noexcept {
  switch (kind) {
    case FeatureKind::kGm: return "GM";
    case FeatureKind::kPc: return "PC";
    case FeatureKind::kSr: return "SR";
    case FeatureKind::kTau: return "TAU";
    case FeatureKind::kIChroma: return "I";
    case FeatureKind::kQChroma: return "Q";
  }
  return "?";
}

const EcsfParams& EcsfConfig::params(ChannelClass cls) const {
  switch (cls) {
    case ChannelClass::kAchromatic: return achromatic;
    case ChannelClass::kChromatic: return chromatic;
  }
  throw Error(Errc::kUnknownChannelClass, std::to_string(static_cast<int>(cls)));
}

void EcsfConfig::validate() const {
  for (const EcsfParams* p : {&achromatic, &chromatic}) {
    if (!(p->gain >= 0.0) || !(p->floor_gain > 0.0) || !(p->spread > 0.0) || !std::isfinite(p->peak_scale)) {
      throw Error(Errc::kConfigError, "ECSF needs gain >= 0, floor_gain > 0, spread > 0");
    }
  }
  if (!(min_floor > 0.0)) throw Error(Errc::kConfigError, "ECSF min_floor must be positive");
}

std::size_t surround_radius(std::size_t scale, double surround_factor) {
  if (scale == 0) throw Error(Errc::kInvalidArgument, "scales are 1-based");
  const double r = std::ceil(surround_factor * std::ldexp(1.0, static_cast<int>(scale) - 1));
  return std::max<std::size_t>(1, static_cast<std::size_t>(r));
}

Plane surround_contrast(const Plane& detail, std::size_t scale, double surround_factor) {
  if (detail.empty()) throw Error(Errc::kEmptyPlane, "surround_contrast on empty plane");
  const std::size_t r = surround_radius(scale, surround_factor);
  const double neighbours = static_cast<double>((2 * r + 1) * (2 * r + 1) - 1);

  Plane squared = detail;
  for (double& v : squared.samples()) v *= v;
  const Plane window = kernels::window_sum(squared, r, r);

  Plane z(detail.width(), detail.height());
  const auto n = static_cast<std::ptrdiff_t>(detail.size());
  const double* c2 = squared.data();
  const double* ws = window.data();
  double* out = z.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double centre = c2[i];
    if (centre == 0.0) {
      out[i] = 0.0;
      continue;
    }
    const double surround = std::max(ws[i] - centre, 0.0) / neighbours;
    out[i] = centre / (centre + surround);
  }
  return z;
}

namespace {

double scale_profile(std::size_t scale, const EcsfParams& p) {
  const double d = static_cast<double>(scale) - p.peak_scale;
  return std::exp(-(d * d) / (2.0 * p.spread * p.spread));
}

}  // namespace

double ecsf_gain(std::size_t scale, ChannelClass cls, const EcsfConfig& cfg) {
  const EcsfParams& p = cfg.params(cls);
  return p.gain * scale_profile(scale, p);
}

double ecsf_floor(std::size_t scale, ChannelClass cls, const EcsfConfig& cfg) {
  const EcsfParams& p = cfg.params(cls);
  return std::max(p.floor_gain * scale_profile(scale, p), cfg.min_floor);
}

Plane ecsf_adjust(const Plane& z, std::size_t scale, ChannelClass cls, const EcsfConfig& cfg) {
  const double g = ecsf_gain(scale, cls, cfg);
  const double k = ecsf_floor(scale, cls, cfg);
  Plane alpha = z;
  for (double& v : alpha.samples()) v = v * g + k;
  return alpha;
}

Plane compute_tau_channel(const Plane& channel, ChannelClass cls, const TauConfig& cfg) {
  cfg.ecsf.validate();
  const std::size_t w = channel.width();
  const std::size_t h = channel.height();
  const std::size_t scales = cfg.scales.value_or(default_wavelet_scales(w, h));
  WaveletPyramid pyramid = wavelet_forward(channel, scales);

  for (std::size_t s = 1; s <= scales; ++s) {
    const double floor = ecsf_floor(s, cls, cfg.ecsf);
    for (Orientation o : kOrientations) {
      Plane& plane = pyramid.detail(s, o);
      const std::size_t depth = cfg.grouplet_depth.value_or(default_grouplet_depth(w));
      const GroupletStack stack = grouplet_forward(plane, depth);

      Plane alpha(w, h, 0.0);
      for (std::size_t j = 2; j <= depth + 1; ++j) {
        const Plane z = surround_contrast(stack.detail(j), s, cfg.surround_factor);
        const Plane level = resize_bicubic(ecsf_adjust(z, s, cls, cfg.ecsf), w, h);
        auto acc = alpha.samples();
        const auto add = level.samples();
        // Interpolation overshoot must not push a weight below the floor.
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::max(add[i], floor);
      }
      if (cfg.reduction == LevelReduction::kMean) {
        for (double& v : alpha.samples()) v /= static_cast<double>(depth);
      }
      auto coeff = plane.samples();
      const auto weight = alpha.samples();
      for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] *= weight[i];
    }
  }
  return wavelet_inverse(pyramid);
}

SpatiochromaticMap compute_tau(const PlanarImage& srgb, const TauConfig& cfg) {
  const PlanarImage opponent = to_opponent(apply_gamma(srgb, cfg.gamma));
  Plane tau(srgb.width(), srgb.height(), 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    const ChannelClass cls = i == 2 ? ChannelClass::kAchromatic : ChannelClass::kChromatic;
    const Plane channel = compute_tau_channel(opponent.plane(i), cls, cfg);
    auto acc = tau.samples();
    const auto src = channel.samples();
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += src[k] * src[k];
  }
  for (double& v : tau.samples()) v = std::sqrt(v);
  return SpatiochromaticMap{std::move(tau)};
}

SimilarityMap bless_map(const SpatiochromaticMap& ref, const SpatiochromaticMap& dist, double c1) {
  if (!(c1 > 0.0)) throw Error(Errc::kInvalidArgument, "similarity constant must be positive");
  require_same_shape(ref.tau, dist.tau, "bless_map");
  return SimilarityMap{kernels::similarity(ref.tau, dist.tau, c1)};
}

double bless_score(const SimilarityMap& map) {
  if (map.grid.empty()) throw Error(Errc::kEmptyMap, "bless_score of empty map");
  return plane_mean(map.grid);
}

}  // namespace bless

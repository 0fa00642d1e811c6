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

#include "bless/estimators.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <numbers>

#include "bless/error.hpp"
#include "bless/kernels.hpp"
#include "bless/resample.hpp"

namespace bless {

namespace {

std::string canonical(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

bool uses_bless(Estimator e) {
  return e == Estimator::kBlessFsim || e == Estimator::kBlessFsimc || e == Estimator::kBlessSrsim ||
         e == Estimator::kBless;
}

const FeatureMap& need(const std::optional<FeatureMap>& f, const char* what) {
  if (!f) throw Error(Errc::kInvalidArgument, std::string("feature not extracted: ") + what);
  return *f;
}

const SpatiochromaticMap& need_tau(const ImageFeatures& f) {
  if (!f.tau) throw Error(Errc::kInvalidArgument, "feature not extracted: TAU");
  return *f.tau;
}

Plane pointwise_max(const Plane& a, const Plane& b) {
  require_same_shape(a, b, "pointwise_max");
  Plane out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i) out.samples()[i] = std::max(a.samples()[i], b.samples()[i]);
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  require_same_shape(a, b, "product");
  Plane out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i) out.samples()[i] = a.samples()[i] * b.samples()[i];
  return out;
}

// tau must be aligned with the feature grid before it can weight it.
Plane tau_on_grid(const SpatiochromaticMap& tau, const Plane& like) {
  if (same_shape(tau.tau, like)) return tau.tau;
  Plane resized = resize_bicubic(tau.tau, like.width(), like.height());
  for (double& v : resized.samples()) v = std::max(v, 0.0);
  return resized;
}

Plane assisted_weight(const Plane& ref_feature, const Plane& dist_feature, const ImageFeatures& ref,
                      const ImageFeatures& dist) {
  return pointwise_max(product(ref_feature, tau_on_grid(need_tau(ref), ref_feature)),
                       product(dist_feature, tau_on_grid(need_tau(dist), dist_feature)));
}

QualityResult finish(Estimator e, Plane f, Plane w) {
  const double score = std::min(weighted_pool(f, w), 1.0);
  return QualityResult{e, score, std::move(f), std::move(w)};
}

Plane luma_255(const PlanarImage& srgb, const PlanarImage& yiq, const MetricConfig& cfg) {
  Plane luma = yiq.plane(0);
  if (cfg.luma == LumaSource::kI3) {
    const PlanarImage opp = to_opponent(apply_gamma(srgb, cfg.tau.gamma));
    luma = opp.plane(2);
    for (double& v : luma.samples()) v /= 3.0;
  }
  for (double& v : luma.samples()) v *= 255.0;
  return luma;
}

}  // namespace

const char* to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::kFsim: return "FSIM";
    case Estimator::kFsimc: return "FSIMc";
    case Estimator::kSrsim: return "SRSIM";
    case Estimator::kBlessFsim: return "BLESS_FSIM";
    case Estimator::kBlessFsimc: return "BLESS_FSIMC";
    case Estimator::kBlessSrsim: return "BLESS_SRSIM";
    case Estimator::kBless: return "BLESS";
  }
  return "?";
}

std::optional<Estimator> parse_estimator(std::string_view name) {
  const std::string key = canonical(name);
  for (Estimator e : kAllEstimators) {
    if (canonical(to_string(e)) == key) return e;
  }
  return std::nullopt;
}

FeatureNeeds needs_for(std::span<const Estimator> estimators) {
  FeatureNeeds n;
  for (Estimator e : estimators) {
    switch (e) {
      case Estimator::kFsim:
      case Estimator::kBlessFsim:
        n.gm_fsim = n.pc = true;
        break;
      case Estimator::kFsimc:
      case Estimator::kBlessFsimc:
        n.gm_fsim = n.pc = n.chroma = true;
        break;
      case Estimator::kSrsim:
      case Estimator::kBlessSrsim:
        n.gm_srsim = n.sr = true;
        break;
      case Estimator::kBless:
        break;
    }
    if (uses_bless(e)) n.tau = true;
  }
  return n;
}

PlanarImage prepare_for_metric(const PlanarImage& srgb, const MetricConfig& cfg) {
  if (srgb.space() != ColorSpace::kRgbSrgb) throw Error(Errc::kInvalidArgument, "estimators expect RGB-sRGB input");
  return cfg.downsample ? downsample_for_metric(srgb) : srgb;
}

ImageFeatures extract_features(const PlanarImage& srgb, const FeatureNeeds& needs, const MetricConfig& cfg) {
  const PlanarImage yiq = to_yiq(srgb);
  ImageFeatures f;
  f.luma = luma_255(srgb, yiq, cfg);
  if (needs.chroma) {
    f.chroma_i = yiq.plane(1);
    f.chroma_q = yiq.plane(2);
    for (double& v : f.chroma_i.samples()) v *= 255.0;
    for (double& v : f.chroma_q.samples()) v *= 255.0;
  }
  if (needs.gm_fsim) f.gm_fsim = gradient_magnitude(f.luma, cfg.fsim_gradient);
  if (needs.gm_srsim) f.gm_srsim = gradient_magnitude(f.luma, cfg.srsim_gradient);
  if (needs.pc) f.pc = phase_congruency(f.luma, cfg.pc);
  if (needs.sr) f.sr = spectral_residual(f.luma, cfg.sr);
  if (needs.tau) f.tau = compute_tau(srgb, cfg.tau);
  return f;
}

double real_power(double base, double exponent) noexcept {
  if (base > 0.0) return std::pow(base, exponent);
  if (base == 0.0) return exponent > 0.0 ? 0.0 : 1.0;
  return std::pow(-base, exponent) * std::cos(exponent * std::numbers::pi);
}

double weighted_pool(const Plane& f, const Plane& w) {
  require_same_shape(f, w, "weighted_pool");
  if (f.empty()) throw Error(Errc::kEmptyMap, "weighted_pool of empty maps");
  for (double v : w.samples()) {
    if (!(v >= 0.0)) throw Error(Errc::kInvalidArgument, "weight map must be non-negative");
  }
  const kernels::PoolSums sums = kernels::pool_sums(f, w);
  if (!(sums.weight > 0.0)) throw Error(Errc::kZeroWeightMass, "weight map sums to zero");
  return sums.weighted / sums.weight;
}

QualityResult evaluate(Estimator e, const ImageFeatures& ref, const ImageFeatures& dist, const MetricConfig& cfg) {
  require_same_shape(ref.luma, dist.luma, "evaluate");
  const bool assisted = uses_bless(e);
  std::optional<Plane> bless;
  if (assisted) bless = bless_map(need_tau(ref), need_tau(dist), SimilarityConstants::kTau).grid;

  switch (e) {
    case Estimator::kFsim:
    case Estimator::kBlessFsim:
    case Estimator::kFsimc:
    case Estimator::kBlessFsimc: {
      const FeatureMap& pc_r = need(ref.pc, "PC");
      const FeatureMap& pc_d = need(dist.pc, "PC");
      const Plane s_gm =
          similarity_map(need(ref.gm_fsim, "GM"), need(dist.gm_fsim, "GM"), SimilarityConstants::kGmFsim).grid;
      const Plane s_pc = similarity_map(pc_r, pc_d, SimilarityConstants::kPc).grid;
      Plane f = product(s_gm, s_pc);
      const bool colour = e == Estimator::kFsimc || e == Estimator::kBlessFsimc;
      if (colour) {
        const Plane s_i = kernels::similarity(ref.chroma_i, dist.chroma_i, cfg.chroma_constant);
        const Plane s_q = kernels::similarity(ref.chroma_q, dist.chroma_q, cfg.chroma_constant);
        for (std::size_t i = 0; i < f.size(); ++i) {
          const double iq = s_i.samples()[i] * s_q.samples()[i];
          assert(iq > 0.0);
          f.samples()[i] *= real_power(iq, FusionConstants::kChroma);
        }
      }
      if (assisted) {
        const double exponent = colour ? FusionConstants::kBless : 1.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
          const double b = bless->samples()[i];
          f.samples()[i] *= colour ? std::pow(b, exponent) : b;
        }
        return finish(e, std::move(f), assisted_weight(pc_r.grid, pc_d.grid, ref, dist));
      }
      return finish(e, std::move(f), pointwise_max(pc_r.grid, pc_d.grid));
    }
    case Estimator::kSrsim:
    case Estimator::kBlessSrsim: {
      const FeatureMap& sr_r = need(ref.sr, "SR");
      const FeatureMap& sr_d = need(dist.sr, "SR");
      const Plane s_sr = similarity_map(sr_r, sr_d, SimilarityConstants::kSr).grid;
      const Plane s_gm =
          similarity_map(need(ref.gm_srsim, "GM"), need(dist.gm_srsim, "GM"), SimilarityConstants::kGmSrsim).grid;
      Plane f(s_sr.width(), s_sr.height());
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double gm = assisted ? s_gm.samples()[i] * bless->samples()[i] : s_gm.samples()[i];
        f.samples()[i] = s_sr.samples()[i] * std::pow(gm, FusionConstants::kSrsim);
      }
      if (assisted) return finish(e, std::move(f), assisted_weight(sr_r.grid, sr_d.grid, ref, dist));
      return finish(e, std::move(f), pointwise_max(sr_r.grid, sr_d.grid));
    }
    case Estimator::kBless: {
      Plane w(bless->width(), bless->height(), 1.0);
      return finish(e, std::move(*bless), std::move(w));
    }
  }
  throw Error(Errc::kInvalidArgument, "unknown estimator");
}

std::vector<QualityResult> score_pair(const PlanarImage& ref, const PlanarImage& dist,
                                      std::span<const Estimator> estimators, const MetricConfig& cfg) {
  if (ref.width() != dist.width() || ref.height() != dist.height()) {
    throw Error(Errc::kDimensionMismatch, "reference is " + std::to_string(ref.width()) + "x" +
                                              std::to_string(ref.height()) + ", distorted is " +
                                              std::to_string(dist.width()) + "x" + std::to_string(dist.height()));
  }
  const FeatureNeeds needs = needs_for(estimators);
  const ImageFeatures fr = extract_features(prepare_for_metric(ref, cfg), needs, cfg);
  const ImageFeatures fd = extract_features(prepare_for_metric(dist, cfg), needs, cfg);
  std::vector<QualityResult> out;
  out.reserve(estimators.size());
  for (Estimator e : estimators) out.push_back(evaluate(e, fr, fd, cfg));
  return out;
}

namespace {
QualityResult score_one(const PlanarImage& ref, const PlanarImage& dist, Estimator e, const MetricConfig& cfg) {
  const std::array<Estimator, 1> one = {e};
  return std::move(score_pair(ref, dist, one, cfg).front());
}
}  // namespace

QualityResult fsim(const PlanarImage& ref, const PlanarImage& dist, bool use_bless, const MetricConfig& cfg) {
  return score_one(ref, dist, use_bless ? Estimator::kBlessFsim : Estimator::kFsim, cfg);
}

QualityResult fsimc(const PlanarImage& ref, const PlanarImage& dist, bool use_bless, const MetricConfig& cfg) {
  return score_one(ref, dist, use_bless ? Estimator::kBlessFsimc : Estimator::kFsimc, cfg);
}

QualityResult srsim(const PlanarImage& ref, const PlanarImage& dist, bool use_bless, const MetricConfig& cfg) {
  return score_one(ref, dist, use_bless ? Estimator::kBlessSrsim : Estimator::kSrsim, cfg);
}

QualityResult bless_only(const PlanarImage& ref, const PlanarImage& dist, const MetricConfig& cfg) {
  return score_one(ref, dist, Estimator::kBless, cfg);
}

Plane visualize_map(const Plane& f) {
  if (f.empty()) throw Error(Errc::kEmptyMap, "visualize_map of empty map");
  const double mean = plane_mean(f);
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : f.samples()) peak = std::max(peak, v - mean);
  if (!(peak > 0.0)) throw Error(Errc::kDegenerateMap, "map has no sample above its mean");

  Plane v(f.width(), f.height());
  for (std::size_t i = 0; i < f.size(); ++i) v.samples()[i] = std::pow((f.samples()[i] - mean) / peak, 5);
  const double lo = plane_min(v);
  const double hi = plane_max(v);
  for (double& s : v.samples()) s = (s - lo) / (hi - lo);
  return v;
}

}  // namespace bless

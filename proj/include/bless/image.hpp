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
#include <vector>

#include "bless/plane.hpp"

namespace bless {

enum class ColorSpace { kRgbLinear, kRgbSrgb, kOpponent, kYiq, kGray };

const char* to_string(ColorSpace space);
std::size_t plane_count(ColorSpace space) noexcept;

// Planar multi-channel image. All planes share one shape and the plane
// count is fixed by the color space; both are checked on construction.
class PlanarImage {
 public:
  PlanarImage() = default;
  PlanarImage(ColorSpace space, std::vector<Plane> planes, std::size_t downsample_factor = 1);

  ColorSpace space() const noexcept { return space_; }
  std::size_t width() const noexcept { return planes_.empty() ? 0 : planes_[0].width(); }
  std::size_t height() const noexcept { return planes_.empty() ? 0 : planes_[0].height(); }
  std::size_t channels() const noexcept { return planes_.size(); }

  const Plane& plane(std::size_t i) const { return planes_.at(i); }
  const std::vector<Plane>& planes() const noexcept { return planes_; }

  // Decimation factor applied by downsample_for_metric (1 = untouched).
  std::size_t downsample_factor() const noexcept { return downsample_factor_; }

  bool operator==(const PlanarImage&) const = default;

 private:
  ColorSpace space_ = ColorSpace::kGray;
  std::vector<Plane> planes_;
  std::size_t downsample_factor_ = 1;
};

inline constexpr double kDefaultGamma = 2.2;
// Below this R+G+B a pixel is treated as black in the opponent transform.
inline constexpr double kOpponentEpsilon = 1e-12;

// v -> v^gamma on every sample of an sRGB-tagged image.
PlanarImage apply_gamma(const PlanarImage& img, double gamma);

// I1 = (R-G)/(R+G+B), I2 = (R+G-2B)/(R+G+B), I3 = R+G+B.
PlanarImage to_opponent(const PlanarImage& img);

// NTSC YIQ with the coefficients used by the FSIM reference code:
//   Y = 0.299 R + 0.587 G + 0.114 B
//   I = 0.596 R - 0.274 G - 0.322 B
//   Q = 0.211 R - 0.523 G + 0.312 B
PlanarImage to_yiq(const PlanarImage& img);
// Exact matrix inverse of to_yiq; the result is tagged sRGB.
PlanarImage from_yiq(const PlanarImage& yiq);

// Box low-pass and decimation by f = max(1, round(min(H, W) / 256)).
PlanarImage downsample_for_metric(const PlanarImage& img);
std::size_t metric_downsample_factor(std::size_t width, std::size_t height) noexcept;

}  // namespace bless

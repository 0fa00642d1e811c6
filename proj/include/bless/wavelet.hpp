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
#include <cstddef>
#include <vector>

#include "bless/plane.hpp"

namespace bless {

// Orientation of a detail plane, named by the axis the high-pass acts on:
// kHorizontal responds to variation along x (vertical edges), kVertical to
// variation along y, kDiagonal to both.
enum class Orientation { kHorizontal = 0, kVertical = 1, kDiagonal = 2 };

inline constexpr std::array<Orientation, 3> kOrientations = {Orientation::kHorizontal, Orientation::kVertical,
                                                             Orientation::kDiagonal};
char to_char(Orientation o) noexcept;  // 'h', 'v', 'd'

// Cubic B-spline smoothing taps used at every scale, dilated by 2^(s-1).
inline constexpr std::array<double, 5> kSplineTaps = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

// Undecimated pyramid: 3 detail planes per scale plus a residual, all at
// source resolution. Scales are 1-based.
class WaveletPyramid {
 public:
  WaveletPyramid(std::size_t scales, std::vector<Plane> details, Plane residual);

  std::size_t scales() const noexcept { return scales_; }
  std::size_t width() const noexcept { return residual_.width(); }
  std::size_t height() const noexcept { return residual_.height(); }

  const Plane& detail(std::size_t scale, Orientation o) const;
  Plane& detail(std::size_t scale, Orientation o);
  const Plane& residual() const noexcept { return residual_; }
  Plane& residual() noexcept { return residual_; }

 private:
  std::size_t slot(std::size_t scale, Orientation o) const;

  std::size_t scales_;
  std::vector<Plane> details_;  // index 3*(s-1) + orientation
  Plane residual_;
};

// With L_x, L_y the dilated spline low-passes at scale s and c the
// running approximation:
//   h = (1 - L_x) L_y c,  v = L_x (1 - L_y) c,  d = (1 - L_x)(1 - L_y) c,
//   next c = L_x L_y c.
// h + v + d + next c == c, so summation inverts the transform.
WaveletPyramid wavelet_forward(const Plane& plane, std::size_t scales);
Plane wavelet_inverse(const WaveletPyramid& pyramid);

// Largest S with 2^S <= min(w, h) / 8, clamped to [3, 7] and then to what
// the image can hold (2^S <= min(w, h)).
std::size_t default_wavelet_scales(std::size_t width, std::size_t height) noexcept;

}  // namespace bless

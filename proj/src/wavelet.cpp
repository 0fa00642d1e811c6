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

#include "bless/wavelet.hpp"

#include <algorithm>
#include <string>

#include "bless/error.hpp"
#include "bless/kernels.hpp"

namespace bless {

char to_char(Orientation o) noexcept {
  switch (o) {
    case Orientation::kHorizontal: return 'h';
    case Orientation::kVertical: return 'v';
    case Orientation::kDiagonal: return 'd';
  }
  return '?';
}

WaveletPyramid::WaveletPyramid(std::size_t scales, std::vector<Plane> details, Plane residual)
    : scales_(scales), details_(std::move(details)), residual_(std::move(residual)) {
  if (scales_ == 0 || details_.size() != 3 * scales_) {
    throw Error(Errc::kMalformedPyramid, "expected 3 detail planes per scale");
  }
  for (const auto& d : details_) {
    if (!same_shape(d, residual_)) throw Error(Errc::kMalformedPyramid, "detail plane shape differs from residual");
  }
}

std::size_t WaveletPyramid::slot(std::size_t scale, Orientation o) const {
  if (scale == 0 || scale > scales_) {
    throw Error(Errc::kInvalidArgument, "scale " + std::to_string(scale) + " outside 1.." + std::to_string(scales_));
  }
  return 3 * (scale - 1) + static_cast<std::size_t>(o);
}

const Plane& WaveletPyramid::detail(std::size_t scale, Orientation o) const { return details_[slot(scale, o)]; }
Plane& WaveletPyramid::detail(std::size_t scale, Orientation o) { return details_[slot(scale, o)]; }

WaveletPyramid wavelet_forward(const Plane& plane, std::size_t scales) {
  if (plane.empty()) throw Error(Errc::kEmptyPlane, "wavelet_forward on empty plane");
  if (scales == 0) throw Error(Errc::kInvalidArgument, "need at least one scale");
  const std::size_t min_dim = std::min(plane.width(), plane.height());
  if (scales >= 8 * sizeof(std::size_t) || (std::size_t{1} << scales) > min_dim) {
    throw Error(Errc::kTooManyScales, std::to_string(scales) + " scales need min dimension >= 2^S, have " +
                                          std::to_string(min_dim));
  }

  std::vector<Plane> details;
  details.reserve(3 * scales);
  Plane approx = plane;
  for (std::size_t s = 1; s <= scales; ++s) {
    const std::size_t dilation = std::size_t{1} << (s - 1);
    const Plane low_y = kernels::convolve_cols(approx, kSplineTaps, dilation);
    const Plane low_x = kernels::convolve_rows(approx, kSplineTaps, dilation);
    Plane low_xy = kernels::convolve_rows(low_y, kSplineTaps, dilation);

    Plane h(plane.width(), plane.height());
    Plane v(plane.width(), plane.height());
    Plane d(plane.width(), plane.height());
    const auto n = static_cast<std::ptrdiff_t>(plane.size());
    const double* c = approx.data();
    const double* ly = low_y.data();
    const double* lx = low_x.data();
    const double* lxy = low_xy.data();
    double* ph = h.data();
    double* pv = v.data();
    double* pd = d.data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      ph[i] = ly[i] - lxy[i];
      pv[i] = lx[i] - lxy[i];
      pd[i] = c[i] - lx[i] - ly[i] + lxy[i];
    }
    details.push_back(std::move(h));
    details.push_back(std::move(v));
    details.push_back(std::move(d));
    approx = std::move(low_xy);
  }
  return WaveletPyramid(scales, std::move(details), std::move(approx));
}

Plane wavelet_inverse(const WaveletPyramid& pyramid) {
  Plane out = pyramid.residual();
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  for (std::size_t s = pyramid.scales(); s >= 1; --s) {
    const double* h = pyramid.detail(s, Orientation::kHorizontal).data();
    const double* v = pyramid.detail(s, Orientation::kVertical).data();
    const double* d = pyramid.detail(s, Orientation::kDiagonal).data();
    if (!same_shape(pyramid.detail(s, Orientation::kHorizontal), out) ||
        !same_shape(pyramid.detail(s, Orientation::kVertical), out) ||
        !same_shape(pyramid.detail(s, Orientation::kDiagonal), out)) {
      throw Error(Errc::kMalformedPyramid, "detail plane shape changed after construction");
    }
    double* o = out.data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) o[i] += h[i] + v[i] + d[i];
  }
  return out;
}

std::size_t default_wavelet_scales(std::size_t width, std::size_t height) noexcept {
  const std::size_t min_dim = std::min(width, height);
  std::size_t s = 0;
  while (s < 7 && (std::size_t{1} << (s + 1)) * 8 <= min_dim) ++s;
  s = std::clamp<std::size_t>(s, 3, 7);
  while (s > 1 && (std::size_t{1} << s) > min_dim) --s;
  return s;
}

}  // namespace bless

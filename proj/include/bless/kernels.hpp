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

// Data-parallel inner loops shared by the whole pipeline. Everything in
// bless::kernels runs under OpenMP; bless::kernels::serial holds plain
// single-threaded reference versions with the same contracts, kept for
// tests and for the serial-vs-parallel benchmark.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bless/plane.hpp"

namespace bless::kernels {

// Half-sample symmetric extension: -1 -> 0, n -> n-1, periodic with 2n.
inline std::ptrdiff_t mirror_index(std::ptrdiff_t i, std::ptrdiff_t n) noexcept {
  const std::ptrdiff_t period = 2 * n;
  std::ptrdiff_t r = i % period;
  if (r < 0) r += period;
  return r < n ? r : period - 1 - r;
}

// Per-output interpolation taps along one axis: output i reads
// index[i * taps + k] with weight weight[i * taps + k].
struct ResampleTable {
  std::size_t in_size = 0;
  std::size_t out_size = 0;
  std::size_t taps = 0;
  std::vector<std::size_t> index;
  std::vector<double> weight;
};

struct PoolSums {
  double weighted = 0.0;  // sum of F * W
  double weight = 0.0;    // sum of W
};

// Odd-length tap vector centered on the output sample, taps spaced
// `dilation` samples apart (a trous).
Plane convolve_rows(const Plane& in, std::span<const double> taps, std::size_t dilation);
Plane convolve_cols(const Plane& in, std::span<const double> taps, std::size_t dilation);

// Sum over the (2rx+1) x (2ry+1) window centered on each sample.
Plane window_sum(const Plane& in, std::size_t radius_x, std::size_t radius_y);

// 3x3 correlation, row-major taps, mirror borders.
Plane correlate3x3(const Plane& in, const std::array<double, 9>& taps);

Plane resample_rows(const Plane& in, const ResampleTable& table);
Plane resample_cols(const Plane& in, const ResampleTable& table);

// (2ab + c) / (a^2 + b^2 + c)
Plane similarity(const Plane& a, const Plane& b, double c);

// Row partial sums combined in row order, so the result does not depend
// on the thread count.
PoolSums pool_sums(const Plane& f, const Plane& w);

namespace serial {

Plane convolve_rows(const Plane& in, std::span<const double> taps, std::size_t dilation);
Plane convolve_cols(const Plane& in, std::span<const double> taps, std::size_t dilation);
Plane window_sum(const Plane& in, std::size_t radius_x, std::size_t radius_y);
Plane correlate3x3(const Plane& in, const std::array<double, 9>& taps);
Plane resample_rows(const Plane& in, const ResampleTable& table);
Plane resample_cols(const Plane& in, const ResampleTable& table);
Plane similarity(const Plane& a, const Plane& b, double c);
PoolSums pool_sums(const Plane& f, const Plane& w);

}  // namespace serial

}  // namespace bless::kernels

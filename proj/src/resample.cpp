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

#include "bless/resample.hpp"

#include <cmath>

#include "bless/error.hpp"

namespace bless {

double cubic_kernel(double x) noexcept {
  const double ax = std::abs(x);
  const double ax2 = ax * ax;
  const double ax3 = ax2 * ax;
  if (ax <= 1.0) return 1.5 * ax3 - 2.5 * ax2 + 1.0;
  if (ax <= 2.0) return -0.5 * ax3 + 2.5 * ax2 - 4.0 * ax + 2.0;
  return 0.0;
}

kernels::ResampleTable bicubic_table(std::size_t in_size, std::size_t out_size) {
  if (in_size == 0) throw Error(Errc::kEmptyPlane, "cannot resample an empty axis");
  if (out_size == 0) throw Error(Errc::kInvalidArgument, "output size must be >= 1");

  const double scale = static_cast<double>(out_size) / static_cast<double>(in_size);
  const bool shrink = scale < 1.0;
  const double kernel_width = shrink ? 4.0 / scale : 4.0;
  const auto taps = static_cast<std::size_t>(std::ceil(kernel_width)) + 2;

  kernels::ResampleTable table;
  table.in_size = in_size;
  table.out_size = out_size;
  table.taps = taps;
  table.index.resize(out_size * taps);
  table.weight.resize(out_size * taps);

  const auto n = static_cast<std::ptrdiff_t>(in_size);
  for (std::size_t i = 0; i < out_size; ++i) {
    // 1-based source coordinate of output sample i+1.
    const double u = static_cast<double>(i + 1) / scale + 0.5 * (1.0 - 1.0 / scale);
    const auto left = static_cast<std::ptrdiff_t>(std::floor(u - kernel_width / 2.0));
    double total = 0.0;
    for (std::size_t k = 0; k < taps; ++k) {
      const std::ptrdiff_t src = left + static_cast<std::ptrdiff_t>(k);
      const double d = u - static_cast<double>(src);
      const double wt = shrink ? scale * cubic_kernel(scale * d) : cubic_kernel(d);
      table.index[i * taps + k] = static_cast<std::size_t>(kernels::mirror_index(src - 1, n));
      table.weight[i * taps + k] = wt;
      total += wt;
    }
    for (std::size_t k = 0; k < taps; ++k) table.weight[i * taps + k] /= total;
  }
  return table;
}

Plane resize_bicubic(const Plane& plane, std::size_t out_w, std::size_t out_h) {
  if (plane.empty()) throw Error(Errc::kEmptyPlane, "resize_bicubic on empty plane");
  if (out_w == 0 || out_h == 0) throw Error(Errc::kInvalidArgument, "resize target must be at least 1x1");
  Plane out = plane;
  if (out_w != plane.width()) out = kernels::resample_rows(out, bicubic_table(plane.width(), out_w));
  if (out_h != plane.height()) out = kernels::resample_cols(out, bicubic_table(plane.height(), out_h));
  return out;
}

}  // namespace bless

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

#include "bless/kernels.hpp"

#include <omp.h>

#include "bless/error.hpp"

namespace bless::kernels {

namespace {

using Index = std::ptrdiff_t;

std::vector<Index> tap_offsets(std::size_t count, std::size_t dilation) {
  if (count % 2 == 0) throw Error(Errc::kInvalidArgument, "tap count must be odd");
  const Index center = static_cast<Index>(count / 2);
  std::vector<Index> offsets(count);
  for (std::size_t k = 0; k < count; ++k) {
    offsets[k] = (static_cast<Index>(k) - center) * static_cast<Index>(dilation);
  }
  return offsets;
}

}  // namespace

Plane convolve_rows(const Plane& in, std::span<const double> taps, std::size_t dilation) {
  const Index w = static_cast<Index>(in.width());
  const Index h = static_cast<Index>(in.height());
  const std::size_t k_count = taps.size();
  const auto offsets = tap_offsets(k_count, dilation);

  // Column lookup is shared by every row.
  std::vector<Index> lookup(static_cast<std::size_t>(w) * k_count);
  for (Index x = 0; x < w; ++x) {
    for (std::size_t k = 0; k < k_count; ++k) {
      lookup[static_cast<std::size_t>(x) * k_count + k] = mirror_index(x + offsets[k], w);
    }
  }

  Plane out(in.width(), in.height());
#pragma omp parallel for schedule(static)
  for (Index y = 0; y < h; ++y) {
    const auto src = in.row(static_cast<std::size_t>(y));
    auto dst = out.row(static_cast<std::size_t>(y));
    for (Index x = 0; x < w; ++x) {
      const Index* idx = &lookup[static_cast<std::size_t>(x) * k_count];
      double acc = 0.0;
      for (std::size_t k = 0; k < k_count; ++k) acc += taps[k] * src[static_cast<std::size_t>(idx[k])];
      dst[static_cast<std::size_t>(x)] = acc;
    }
  }
  return out;
}

Plane convolve_cols(const Plane& in, std::span<const double> taps, std::size_t dilation) {
  const Index w = static_cast<Index>(in.width());
  const Index h = static_cast<Index>(in.height());
  const auto offsets = tap_offsets(taps.size(), dilation);

  Plane out(in.width(), in.height());
#pragma omp parallel for schedule(static)
  for (Index y = 0; y < h; ++y) {
    auto dst = out.row(static_cast<std::size_t>(y));
    for (std::size_t k = 0; k < taps.size(); ++k) {
      const auto src = in.row(static_cast<std::size_t>(mirror_index(y + offsets[k], h)));
      const double t = taps[k];
      for (Index x = 0; x < w; ++x) dst[static_cast<std::size_t>(x)] += t * src[static_cast<std::size_t>(x)];
    }
  }
  return out;
}

Plane window_sum(const Plane& in, std::size_t radius_x, std::size_t radius_y) {
  const Index w = static_cast<Index>(in.width());
  const Index h = static_cast<Index>(in.height());
  const Index rx = static_cast<Index>(radius_x);
  const Index ry = static_cast<Index>(radius_y);

  // Horizontal pass with a sliding sum per row.
  Plane horiz(in.width(), in.height());
#pragma omp parallel for schedule(static)
  for (Index y = 0; y < h; ++y) {
    const auto src = in.row(static_cast<std::size_t>(y));
    auto dst = horiz.row(static_cast<std::size_t>(y));
    double acc = 0.0;
    for (Index i = -rx; i <= rx; ++i) acc += src[static_cast<std::size_t>(mirror_index(i, w))];
    dst[0] = acc;
    for (Index x = 1; x < w; ++x) {
      acc += src[static_cast<std::size_t>(mirror_index(x + rx, w))];
      acc -= src[static_cast<std::size_t>(mirror_index(x - rx - 1, w))];
      dst[static_cast<std::size_t>(x)] = acc;
    }
  }

  // Vertical pass, column strips so each thread slides over whole columns.
  Plane out(in.width(), in.height());
#pragma omp parallel for schedule(static)
  for (Index x = 0; x < w; ++x) {
    const std::size_t col = static_cast<std::size_t>(x);
    double acc = 0.0;
    for (Index j = -ry; j <= ry; ++j) acc += horiz(col, static_cast<std::size_t>(mirror_index(j, h)));
    out(col, 0) = acc;
    for (Index y = 1; y < h; ++y) {
      acc += horiz(col, static_cast<std::size_t>(mirror_index(y + ry, h)));
      acc -= horiz(col, static_cast<std::size_t>(mirror_index(y - ry - 1, h)));
      out(col, static_cast<std::size_t>(y)) = acc;
    }
  }
  return out;
}

Plane correlate3x3(const Plane& in, const std::array<double, 9>& taps) {
  const Index w = static_cast<Index>(in.width());
  const Index h = static_cast<Index>(in.height());
  Plane out(in.width(), in.height());
#pragma omp parallel for schedule(static)
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (Index dy = -1; dy <= 1; ++dy) {
        const auto yy = static_cast<std::size_t>(mirror_index(y + dy, h));
        for (Index dx = -1; dx <= 1; ++dx) {
          const auto xx = static_cast<std::size_t>(mirror_index(x + dx, w));
          acc += taps[static_cast<std::size_t>((dy + 1) * 3 + (dx + 1))] * in(xx, yy);
        }
      }
      out(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc;
    }
  }
  return out;
}

Plane resample_rows(const Plane& in, const ResampleTable& table) {
  if (table.in_size != in.width()) throw Error(Errc::kDimensionMismatch, "resample table width");
  const Index h = static_cast<Index>(in.height());
  Plane out(table.out_size, in.height());
#pragma omp parallel for schedule(static)
  for (Index y = 0; y < h; ++y) {
    const auto src = in.row(static_cast<std::size_t>(y));
    auto dst = out.row(static_cast<std::size_t>(y));
    for (std::size_t i = 0; i < table.out_size; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < table.taps; ++k) {
        const std::size_t t = i * table.taps + k;
        acc += table.weight[t] * src[table.index[t]];
      }
      dst[i] = acc;
    }
  }
  return out;
}

Plane resample_cols(const Plane& in, const ResampleTable& table) {
  if (table.in_size != in.height()) throw Error(Errc::kDimensionMismatch, "resample table height");
  const Index out_h = static_cast<Index>(table.out_size);
  const std::size_t w = in.width();
  Plane out(in.width(), table.out_size);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < out_h; ++i) {
    auto dst = out.row(static_cast<std::size_t>(i));
    for (std::size_t k = 0; k < table.taps; ++k) {
      const std::size_t t = static_cast<std::size_t>(i) * table.taps + k;
      const double wt = table.weight[t];
      const auto src = in.row(table.index[t]);
      for (std::size_t x = 0; x < w; ++x) dst[x] += wt * src[x];
    }
  }
  return out;
}

Plane similarity(const Plane& a, const Plane& b, double c) {
  require_same_shape(a, b, "similarity");
  Plane out(a.width(), a.height());
  const Index n = static_cast<Index>(a.size());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const double u = pa[i];
    const double v = pb[i];
    po[i] = (2.0 * u * v + c) / (u * u + v * v + c);
  }
  return out;
}

PoolSums pool_sums(const Plane& f, const Plane& w) {
  require_same_shape(f, w, "pool_sums");
  const Index h = static_cast<Index>(f.height());
  std::vector<double> row_fw(f.height());
  std::vector<double> row_w(f.height());
#pragma omp parallel for schedule(static)
  for (Index y = 0; y < h; ++y) {
    const auto fr = f.row(static_cast<std::size_t>(y));
    const auto wr = w.row(static_cast<std::size_t>(y));
    double fw = 0.0;
    double ws = 0.0;
    for (std::size_t x = 0; x < fr.size(); ++x) {
      fw += fr[x] * wr[x];
      ws += wr[x];
    }
    row_fw[static_cast<std::size_t>(y)] = fw;
    row_w[static_cast<std::size_t>(y)] = ws;
  }
  PoolSums sums;
  for (std::size_t y = 0; y < row_fw.size(); ++y) {
    sums.weighted += row_fw[y];
    sums.weight += row_w[y];
  }
  return sums;
}

}  // namespace bless::kernels

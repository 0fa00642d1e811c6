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

#include "bless/error.hpp"
#include "bless/kernels.hpp"

// Direct loops, no lookup tables and no sliding sums. These are the
// reference the OpenMP kernels are checked against.

namespace bless::kernels::serial {

namespace {
using Index = std::ptrdiff_t;
}

Plane convolve_rows(const Plane& in, std::span<const double> taps, std::size_t dilation) {
  if (taps.size() % 2 == 0) throw Error(Errc::kInvalidArgument, "tap count must be odd");
  const Index w = static_cast<Index>(in.width());
  const Index center = static_cast<Index>(taps.size() / 2);
  Plane out(in.width(), in.height());
  for (std::size_t y = 0; y < in.height(); ++y) {
    for (Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < taps.size(); ++k) {
        const Index src = x + (static_cast<Index>(k) - center) * static_cast<Index>(dilation);
        acc += taps[k] * in(static_cast<std::size_t>(mirror_index(src, w)), y);
      }
      out(static_cast<std::size_t>(x), y) = acc;
    }
  }
  return out;
}

Plane convolve_cols(const Plane& in, std::span<const double> taps, std::size_t dilation) {
  if (taps.size() % 2 == 0) throw Error(Errc::kInvalidArgument, "tap count must be odd");
  const Index h = static_cast<Index>(in.height());
  const Index center = static_cast<Index>(taps.size() / 2);
  Plane out(in.width(), in.height());
  for (Index y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < in.width(); ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < taps.size(); ++k) {
        const Index src = y + (static_cast<Index>(k) - center) * static_cast<Index>(dilation);
        acc += taps[k] * in(x, static_cast<std::size_t>(mirror_index(src, h)));
      }
      out(x, static_cast<std::size_t>(y)) = acc;
    }
  }
  return out;
}

Plane window_sum(const Plane& in, std::size_t radius_x, std::size_t radius_y) {
  const Index w = static_cast<Index>(in.width());
  const Index h = static_cast<Index>(in.height());
  const Index rx = static_cast<Index>(radius_x);
  const Index ry = static_cast<Index>(radius_y);
  Plane out(in.width(), in.height());
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (Index dy = -ry; dy <= ry; ++dy) {
        for (Index dx = -rx; dx <= rx; ++dx) {
          acc += in(static_cast<std::size_t>(mirror_index(x + dx, w)),
                    static_cast<std::size_t>(mirror_index(y + dy, h)));
        }
      }
      out(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc;
    }
  }
  return out;
}

Plane correlate3x3(const Plane& in, const std::array<double, 9>& taps) {
  const Index w = static_cast<Index>(in.width());
  const Index h = static_cast<Index>(in.height());
  Plane out(in.width(), in.height());
  for (Index y = 0; y < h; ++y) {
    for (Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (Index dy = -1; dy <= 1; ++dy) {
        for (Index dx = -1; dx <= 1; ++dx) {
          acc += taps[static_cast<std::size_t>((dy + 1) * 3 + (dx + 1))] *
                 in(static_cast<std::size_t>(mirror_index(x + dx, w)),
                    static_cast<std::size_t>(mirror_index(y + dy, h)));
        }
      }
      out(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc;
    }
  }
  return out;
}

Plane resample_rows(const Plane& in, const ResampleTable& table) {
  if (table.in_size != in.width()) throw Error(Errc::kDimensionMismatch, "resample table width");
  Plane out(table.out_size, in.height());
  for (std::size_t y = 0; y < in.height(); ++y) {
    for (std::size_t i = 0; i < table.out_size; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < table.taps; ++k) {
        acc += table.weight[i * table.taps + k] * in(table.index[i * table.taps + k], y);
      }
      out(i, y) = acc;
    }
  }
  return out;
}

Plane resample_cols(const Plane& in, const ResampleTable& table) {
  if (table.in_size != in.height()) throw Error(Errc::kDimensionMismatch, "resample table height");
  Plane out(in.width(), table.out_size);
  for (std::size_t i = 0; i < table.out_size; ++i) {
    for (std::size_t x = 0; x < in.width(); ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < table.taps; ++k) {
        acc += table.weight[i * table.taps + k] * in(x, table.index[i * table.taps + k]);
      }
      out(x, i) = acc;
    }
  }
  return out;
}

Plane similarity(const Plane& a, const Plane& b, double c) {
  require_same_shape(a, b, "similarity");
  Plane out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double u = a.samples()[i];
    const double v = b.samples()[i];
    out.samples()[i] = (2.0 * u * v + c) / (u * u + v * v + c);
  }
  return out;
}

PoolSums pool_sums(const Plane& f, const Plane& w) {
  require_same_shape(f, w, "pool_sums");
  PoolSums sums;
  for (std::size_t y = 0; y < f.height(); ++y) {
    double fw = 0.0;
    double ws = 0.0;
    for (std::size_t x = 0; x < f.width(); ++x) {
      fw += f(x, y) * w(x, y);
      ws += w(x, y);
    }
    sums.weighted += fw;
    sums.weight += ws;
  }
  return sums;
}

}  // namespace bless::kernels::serial

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

#include "bless/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bless/error.hpp"
#include "bless/kernels.hpp"

namespace bless {

namespace {

constexpr double kYiq[3][3] = {
    {0.299, 0.587, 0.114},
    {0.596, -0.274, -0.322},
    {0.211, -0.523, 0.312},
};

bool is_rgb(ColorSpace s) { return s == ColorSpace::kRgbLinear || s == ColorSpace::kRgbSrgb; }

void require_rgb(const PlanarImage& img, const char* op) {
  if (!is_rgb(img.space())) {
    throw Error(Errc::kInvalidArgument, std::string(op) + " expects an RGB image, got " + to_string(img.space()));
  }
}

PlanarImage mix3(const PlanarImage& img, const double (&m)[3][3], ColorSpace out_space) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  std::vector<Plane> out(3, Plane(w, h));
  const double* r = img.plane(0).data();
  const double* g = img.plane(1).data();
  const double* b = img.plane(2).data();
  const auto n = static_cast<std::ptrdiff_t>(w * h);
  double* o0 = out[0].data();
  double* o1 = out[1].data();
  double* o2 = out[2].data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    o0[i] = m[0][0] * r[i] + m[0][1] * g[i] + m[0][2] * b[i];
    o1[i] = m[1][0] * r[i] + m[1][1] * g[i] + m[1][2] * b[i];
    o2[i] = m[2][0] * r[i] + m[2][1] * g[i] + m[2][2] * b[i];
  }
  return PlanarImage(out_space, std::move(out), img.downsample_factor());
}

}  // namespace

const char* to_string(ColorSpace space) {
  switch (space) {
    case ColorSpace::kRgbLinear: return "RGB-linear";
    case ColorSpace::kRgbSrgb: return "RGB-sRGB";
    case ColorSpace::kOpponent: return "Opponent";
    case ColorSpace::kYiq: return "YIQ";
    case ColorSpace::kGray: return "Gray";
  }
  return "?";
}

std::size_t plane_count(ColorSpace space) noexcept { return space == ColorSpace::kGray ? 1 : 3; }

PlanarImage::PlanarImage(ColorSpace space, std::vector<Plane> planes, std::size_t downsample_factor)
    : space_(space), planes_(std::move(planes)), downsample_factor_(downsample_factor) {
  if (planes_.size() != plane_count(space_)) {
    throw Error(Errc::kInvalidArgument, std::string(to_string(space_)) + " image needs " +
                                            std::to_string(plane_count(space_)) + " planes");
  }
  for (const auto& p : planes_) require_same_shape(planes_[0], p, "PlanarImage planes");
  if (downsample_factor_ == 0) throw Error(Errc::kInvalidArgument, "downsample factor must be >= 1");
}

PlanarImage apply_gamma(const PlanarImage& img, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(Errc::kNonPositiveGamma, "gamma must be positive, got " + std::to_string(gamma));
  }
  if (img.space() != ColorSpace::kRgbSrgb) {
    throw Error(Errc::kInvalidArgument, std::string("apply_gamma expects RGB-sRGB, got ") + to_string(img.space()));
  }
  std::vector<Plane> out = img.planes();
  // Negative samples (e.g. rounding after a colour transform) clip to 0.
  for (auto& p : out) {
    for (double& v : p.samples()) v = gamma == 1.0 ? std::max(v, 0.0) : std::pow(std::max(v, 0.0), gamma);
  }
  return PlanarImage(ColorSpace::kRgbLinear, std::move(out), img.downsample_factor());
}

PlanarImage to_opponent(const PlanarImage& img) {
  require_rgb(img, "to_opponent");
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  std::vector<Plane> out(3, Plane(w, h));
  const double* r = img.plane(0).data();
  const double* g = img.plane(1).data();
  const double* b = img.plane(2).data();
  double* i1 = out[0].data();
  double* i2 = out[1].data();
  double* i3 = out[2].data();
  const auto n = static_cast<std::ptrdiff_t>(w * h);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double sum = r[i] + g[i] + b[i];
    if (sum < kOpponentEpsilon) {
      i1[i] = 0.0;
      i2[i] = 0.0;
      i3[i] = 0.0;
    } else {
      i1[i] = (r[i] - g[i]) / sum;
      i2[i] = (r[i] + g[i] - 2.0 * b[i]) / sum;
      i3[i] = sum;
    }
  }
  return PlanarImage(ColorSpace::kOpponent, std::move(out), img.downsample_factor());
}

PlanarImage to_yiq(const PlanarImage& img) {
  require_rgb(img, "to_yiq");
  return mix3(img, kYiq, ColorSpace::kYiq);
}

PlanarImage from_yiq(const PlanarImage& yiq) {
  if (yiq.space() != ColorSpace::kYiq) throw Error(Errc::kInvalidArgument, "from_yiq expects YIQ");
  // Adjugate / determinant of kYiq.
  const auto& m = kYiq;
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  double inv[3][3];
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return mix3(yiq, inv, ColorSpace::kRgbSrgb);
}

std::size_t metric_downsample_factor(std::size_t width, std::size_t height) noexcept {
  const double ratio = static_cast<double>(std::min(width, height)) / 256.0;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(ratio)));
}

PlanarImage downsample_for_metric(const PlanarImage& img) {
  const std::size_t f = metric_downsample_factor(img.width(), img.height());
  if (f == 1) return img;

  // f x f averaging kernel, zero padded, anchored like a 'same' 2-D
  // convolution, then every f-th sample starting at 0.
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const std::size_t out_w = (w + f - 1) / f;
  const std::size_t out_h = (h + f - 1) / f;
  const auto anchor = static_cast<std::ptrdiff_t>(f / 2);
  const double norm = 1.0 / static_cast<double>(f * f);

  std::vector<Plane> out;
  out.reserve(img.channels());
  for (const auto& p : img.planes()) {
    Plane q(out_w, out_h);
    const auto rows = static_cast<std::ptrdiff_t>(out_h);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t oy = 0; oy < rows; ++oy) {
      for (std::size_t ox = 0; ox < out_w; ++ox) {
        double acc = 0.0;
        for (std::size_t dy = 0; dy < f; ++dy) {
          const std::ptrdiff_t y = oy * static_cast<std::ptrdiff_t>(f) + anchor - static_cast<std::ptrdiff_t>(dy);
          if (y < 0 || y >= static_cast<std::ptrdiff_t>(h)) continue;
          for (std::size_t dx = 0; dx < f; ++dx) {
            const std::ptrdiff_t x =
                static_cast<std::ptrdiff_t>(ox * f) + anchor - static_cast<std::ptrdiff_t>(dx);
            if (x < 0 || x >= static_cast<std::ptrdiff_t>(w)) continue;
            acc += p(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
          }
        }
        q(ox, static_cast<std::size_t>(oy)) = acc * norm;
      }
    }
    out.push_back(std::move(q));
  }
  return PlanarImage(img.space(), std::move(out), img.downsample_factor() * f);
}

}  // namespace bless

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

#include "bless/plane.hpp"

#include <algorithm>
#include <string>

#include "bless/error.hpp"

namespace bless {

Plane::Plane(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), data_(width * height, fill) {}

Plane::Plane(std::size_t width, std::size_t height, std::vector<double> samples)
    : width_(width), height_(height), data_(std::move(samples)) {
  if (data_.size() != width * height) {
    throw Error(Errc::kDimensionMismatch, "sample count does not match width*height");
  }
}

void require_same_shape(const Plane& a, const Plane& b, const char* what) {
  if (!same_shape(a, b)) {
    throw Error(Errc::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

double plane_min(const Plane& p) {
  if (p.empty()) throw Error(Errc::kEmptyPlane, "min of empty plane");
  return *std::min_element(p.samples().begin(), p.samples().end());
}

double plane_max(const Plane& p) {
  if (p.empty()) throw Error(Errc::kEmptyPlane, "max of empty plane");
  return *std::max_element(p.samples().begin(), p.samples().end());
}

double plane_sum(const Plane& p) {
  double total = 0.0;
  for (std::size_t y = 0; y < p.height(); ++y) {
    double row_total = 0.0;
    for (double v : p.row(y)) row_total += v;
    total += row_total;
  }
  return total;
}

double plane_mean(const Plane& p) {
  if (p.empty()) throw Error(Errc::kEmptyPlane, "mean of empty plane");
  return plane_sum(p) / static_cast<double>(p.size());
}

}  // namespace bless

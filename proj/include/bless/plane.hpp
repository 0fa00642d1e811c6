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
#include <span>
#include <vector>

namespace bless {

// Row-major 2-D grid of double samples. Value type; copies are deep.
class Plane {
 public:
  Plane() = default;
  Plane(std::size_t width, std::size_t height, double fill = 0.0);
  Plane(std::size_t width, std::size_t height, std::vector<double> samples);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
  double operator()(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }

  std::span<double> row(std::size_t y) { return {data_.data() + y * width_, width_}; }
  std::span<const double> row(std::size_t y) const { return {data_.data() + y * width_, width_}; }

  std::span<double> samples() noexcept { return data_; }
  std::span<const double> samples() const noexcept { return data_; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  bool operator==(const Plane&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

inline bool same_shape(const Plane& a, const Plane& b) noexcept {
  return a.width() == b.width() && a.height() == b.height();
}

// Throws kDimensionMismatch naming `what` when shapes differ.
void require_same_shape(const Plane& a, const Plane& b, const char* what);

double plane_min(const Plane& p);
double plane_max(const Plane& p);
// Row-major sum, fixed order.
double plane_sum(const Plane& p);
double plane_mean(const Plane& p);

}  // namespace bless

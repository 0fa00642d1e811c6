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

#include "bless/grouplet.hpp"

#include <string>

#include "bless/error.hpp"

namespace bless {

namespace {

GroupletLevel pair_columns(const Plane& a, double detail_norm) {
  const std::size_t w = a.width();
  const std::size_t out_w = (w + 1) / 2;
  GroupletLevel level{Plane(out_w, a.height()), Plane(out_w, a.height())};
  const auto rows = static_cast<std::ptrdiff_t>(a.height());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t y = 0; y < rows; ++y) {
    const auto src = a.row(static_cast<std::size_t>(y));
    auto approx = level.approximation.row(static_cast<std::size_t>(y));
    auto detail = level.detail.row(static_cast<std::size_t>(y));
    for (std::size_t m = 0; m < out_w; ++m) {
      const double first = src[2 * m];
      const double second = 2 * m + 1 < w ? src[2 * m + 1] : first;
      approx[m] = (first + second) / 2.0;
      detail[m] = (second - first) / detail_norm;
    }
  }
  return level;
}

}  // namespace

GroupletStack::GroupletStack(Plane source, std::vector<GroupletLevel> levels)
    : source_(std::move(source)), levels_(std::move(levels)) {}

const Plane& GroupletStack::approximation(std::size_t j) const {
  if (j == 1) return source_;
  if (j < 1 || j > depth() + 1) throw Error(Errc::kInvalidArgument, "grouplet level " + std::to_string(j));
  return levels_[j - 2].approximation;
}

const Plane& GroupletStack::detail(std::size_t j) const {
  if (j < 2 || j > depth() + 1) throw Error(Errc::kInvalidArgument, "grouplet detail level " + std::to_string(j));
  return levels_[j - 2].detail;
}

GroupletStack grouplet_forward(const Plane& plane, std::size_t depth) {
  if (plane.empty()) throw Error(Errc::kEmptyPlane, "grouplet_forward on empty plane");
  if (depth == 0) throw Error(Errc::kInvalidArgument, "grouplet depth must be >= 1");
  if (depth >= 8 * sizeof(std::size_t) || (std::size_t{1} << depth) > plane.width()) {
    throw Error(Errc::kDepthTooLarge, "depth " + std::to_string(depth) + " needs width >= 2^J, have " +
                                          std::to_string(plane.width()));
  }
  std::vector<GroupletLevel> levels;
  levels.reserve(depth);
  const Plane* prev = &plane;
  for (std::size_t k = 1; k <= depth; ++k) {
    levels.push_back(pair_columns(*prev, static_cast<double>(std::size_t{1} << k)));
    prev = &levels.back().approximation;
  }
  return GroupletStack(plane, std::move(levels));
}

std::size_t default_grouplet_depth(std::size_t width) noexcept {
  std::size_t j = 1;
  while (j < 5 && (std::size_t{1} << (j + 1)) <= width) ++j;
  return j;
}

}  // namespace bless

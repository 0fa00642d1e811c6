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
#include <vector>

#include "bless/plane.hpp"

namespace bless {

// One pairing step: both planes have ceil(w / 2) columns.
struct GroupletLevel {
  Plane approximation;
  Plane detail;
};

// Haar-style pairing of consecutive samples along x, repeated `depth`
// times. Levels use 1-based indices: approximation(1) is the input plane,
// approximation(j) and detail(j) for j = 2..depth+1 come from pairing
// approximation(j-1):
//   a_j[m] = (a_{j-1}[2m] + a_{j-1}[2m+1]) / 2
//   d_j[m] = (a_{j-1}[2m+1] - a_{j-1}[2m]) / 2^(j-1)
// An unpaired trailing sample pairs with its own mirror image.
class GroupletStack {
 public:
  GroupletStack(Plane source, std::vector<GroupletLevel> levels);

  std::size_t depth() const noexcept { return levels_.size(); }
  const Plane& source() const noexcept { return source_; }
  const Plane& approximation(std::size_t j) const;
  const Plane& detail(std::size_t j) const;

 private:
  Plane source_;
  std::vector<GroupletLevel> levels_;
};

GroupletStack grouplet_forward(const Plane& plane, std::size_t depth);

// Largest J with 2^J <= width, capped at 5.
std::size_t default_grouplet_depth(std::size_t width) noexcept;

}  // namespace bless

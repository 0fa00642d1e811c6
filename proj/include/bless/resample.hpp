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

#include "bless/kernels.hpp"
#include "bless/plane.hpp"

namespace bless {

// Keys cubic kernel with a = -0.5.
double cubic_kernel(double x) noexcept;

// Bicubic taps mapping `in_size` samples onto `out_size` with pixel
// centres aligned. When shrinking, the kernel is stretched by the inverse
// scale so the resize also low-passes. Weights of every output sum to 1.
kernels::ResampleTable bicubic_table(std::size_t in_size, std::size_t out_size);

// Separable bicubic resize (rows, then columns). Constants are preserved
// up to rounding and equal sizes reproduce the input.
Plane resize_bicubic(const Plane& plane, std::size_t out_w, std::size_t out_h);

}  // namespace bless

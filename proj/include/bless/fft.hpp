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

#include <complex>
#include <cstddef>
#include <vector>

#include "bless/plane.hpp"

namespace bless::fft {

using Complex = std::complex<double>;

struct ComplexPlane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Complex> data;  // row-major

  ComplexPlane() = default;
  ComplexPlane(std::size_t w, std::size_t h) : width(w), height(h), data(w * h) {}
  Complex& operator()(std::size_t x, std::size_t y) { return data[y * width + x]; }
  const Complex& operator()(std::size_t x, std::size_t y) const { return data[y * width + x]; }
};

// Unnormalized 2-D DFT.
ComplexPlane forward(const Plane& real);
ComplexPlane forward(const ComplexPlane& in);
// Inverse 2-D DFT scaled by 1/(width*height), so inverse(forward(x)) == x.
ComplexPlane inverse(const ComplexPlane& in);

// Signed frequency of bin k on an axis of n samples, in cycles/sample,
// laid out the way an ifftshift of a centred grid would be: even n gives
// k/n and (k-n)/n, odd n gives k/(n-1) and (k-n)/(n-1).
double bin_frequency(std::size_t k, std::size_t n) noexcept;

}  // namespace bless::fft

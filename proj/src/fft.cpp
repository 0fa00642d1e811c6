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

#include "bless/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "bless/error.hpp"

namespace bless::fft {

namespace {

// The FFTW planner is not thread-safe; execution on a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

ComplexPlane transform(const ComplexPlane& in, int sign) {
  if (in.data.empty()) throw Error(Errc::kEmptyPlane, "fft of empty plane");
  ComplexPlane out(in.width, in.height);
  ComplexPlane scratch = in;
  auto* src = reinterpret_cast<fftw_complex*>(scratch.data.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(in.height), static_cast<int>(in.width), src, dst, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw Error(Errc::kInvalidArgument, "fftw planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

ComplexPlane forward(const Plane& real) {
  ComplexPlane in(real.width(), real.height());
  for (std::size_t i = 0; i < real.size(); ++i) in.data[i] = real.samples()[i];
  return transform(in, FFTW_FORWARD);
}

ComplexPlane forward(const ComplexPlane& in) { return transform(in, FFTW_FORWARD); }

ComplexPlane inverse(const ComplexPlane& in) {
  ComplexPlane out = transform(in, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(in.width * in.height);
  for (auto& v : out.data) v *= scale;
  return out;
}

double bin_frequency(std::size_t k, std::size_t n) noexcept {
  const auto kk = static_cast<double>(k);
  const auto nn = static_cast<double>(n);
  if (n % 2 == 0) return (k < n / 2 ? kk : kk - nn) / nn;
  if (n == 1) return 0.0;
  return (k <= (n - 1) / 2 ? kk : kk - nn) / (nn - 1.0);
}

}  // namespace bless::fft

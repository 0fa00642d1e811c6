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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bless/estimators.hpp"
#include "bless/kernels.hpp"
#include "bless/resample.hpp"

namespace {

using namespace bless;

Plane noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Plane p(n, n);
  for (double& v : p.samples()) v = u(rng);
  return p;
}

const std::vector<double> kTaps = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

template <bool kSerial>
void BM_ConvolveCols(benchmark::State& state) {
  const Plane p = noise(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    Plane out = kSerial ? kernels::serial::convolve_cols(p, kTaps, 4) : kernels::convolve_cols(p, kTaps, 4);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.size()));
}

template <bool kSerial>
void BM_WindowSum(benchmark::State& state) {
  const Plane p = noise(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    Plane out = kSerial ? kernels::serial::window_sum(p, 6, 6) : kernels::window_sum(p, 6, 6);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.size()));
}

template <bool kSerial>
void BM_Resample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Plane p = noise(n, 3);
  const auto table = bicubic_table(n, n / 2 + 1);
  for (auto _ : state) {
    Plane out = kSerial ? kernels::serial::resample_cols(p, table) : kernels::resample_cols(p, table);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool kSerial>
void BM_Similarity(benchmark::State& state) {
  const Plane a = noise(static_cast<std::size_t>(state.range(0)), 4), b = noise(a.width(), 5);
  for (auto _ : state) {
    Plane out = kSerial ? kernels::serial::similarity(a, b, 0.4) : kernels::similarity(a, b, 0.4);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_ScorePair(benchmark::State& state) {
  std::vector<Plane> planes;
  for (std::uint64_t c = 0; c < 3; ++c) planes.push_back(noise(static_cast<std::size_t>(state.range(0)), 10 + c));
  const PlanarImage a(ColorSpace::kRgbSrgb, planes);
  for (Plane& p : planes)
    for (double& v : p.samples()) v = 0.9 * v + 0.05;
  const PlanarImage b(ColorSpace::kRgbSrgb, planes);
  for (auto _ : state) benchmark::DoNotOptimize(score_pair(a, b, kAllEstimators));
}

}  // namespace

BENCHMARK(BM_ConvolveCols<true>)->Name("convolve_cols/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_ConvolveCols<false>)->Name("convolve_cols/openmp")->Arg(256)->Arg(1024);
BENCHMARK(BM_WindowSum<true>)->Name("window_sum/serial")->Arg(256);
BENCHMARK(BM_WindowSum<false>)->Name("window_sum/openmp")->Arg(256)->Arg(1024);
BENCHMARK(BM_Resample<true>)->Name("resample_cols/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_Resample<false>)->Name("resample_cols/openmp")->Arg(256)->Arg(1024);
BENCHMARK(BM_Similarity<true>)->Name("similarity/serial")->Arg(1024);
BENCHMARK(BM_Similarity<false>)->Name("similarity/openmp")->Arg(1024);
BENCHMARK(BM_ScorePair)->Name("score_pair/all_estimators")->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

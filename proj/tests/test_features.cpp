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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "bless/error.hpp"
#include "bless/features.hpp"
#include "support/synth.hpp"

namespace bless {
namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kInvalidArgument;
}

Plane offset(const Plane& p, double c) {
  Plane out = p;
  for (double& v : out.samples()) v += c;
  return out;
}

Plane step_edge(std::size_t n) {
  Plane p(n, n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = n / 2; x < n; ++x) p(x, y) = 1.0;
  return p;
}

TEST(Gradient, ConstantIsZero) {
  for (auto op : {GradientOperator::kScharr, GradientOperator::kSobel}) {
    const auto gm = gradient_magnitude(Plane(12, 10, 42.0), op);
    EXPECT_EQ(gm.kind, FeatureKind::kGm);
    for (double v : gm.grid.samples()) EXPECT_EQ(v, 0.0);
  }
}

TEST(Gradient, DiagonalRampInterior) {
  Plane ramp(16, 16);
  for (std::size_t y = 0; y < 16; ++y)
    for (std::size_t x = 0; x < 16; ++x) ramp(x, y) = static_cast<double>(x + y);
  // Central difference over two pixels along each axis: (2, 2).
  const double expect = std::sqrt(8.0);
  for (auto op : {GradientOperator::kScharr, GradientOperator::kSobel}) {
    const auto gm = gradient_magnitude(ramp, op);
    for (std::size_t y = 1; y < 15; ++y)
      for (std::size_t x = 1; x < 15; ++x) EXPECT_NEAR(gm.grid(x, y), expect, 1e-12);
  }
}

TEST(Gradient, StepEdgePeaksOnEdge) {
  const auto gm = gradient_magnitude(step_edge(32));
  const double peak = plane_max(gm.grid);
  EXPECT_GT(peak, 0.0);
  EXPECT_EQ(gm.grid(15, 10), peak);
  EXPECT_EQ(gm.grid(16, 10), peak);
  EXPECT_EQ(gm.grid(5, 10), 0.0);
  EXPECT_EQ(gm.grid(28, 10), 0.0);
}

TEST(Gradient, OffsetInvariantScaleLinear) {
  const Plane p = test::random_plane(20, 20, 3, 0.0, 255.0);
  const auto a = gradient_magnitude(p), b = gradient_magnitude(offset(p, 17.0));
  Plane scaled = p;
  for (double& v : scaled.samples()) v *= 3.0;
  const auto c = gradient_magnitude(scaled);
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_NEAR(a.grid.samples()[k], b.grid.samples()[k], 1e-9);
    EXPECT_NEAR(3.0 * a.grid.samples()[k], c.grid.samples()[k], 1e-9);
  }
}

TEST(PhaseCongruency, ConstantIsZero) {
  const auto pc = phase_congruency(Plane(64, 48, 128.0));
  EXPECT_EQ(pc.kind, FeatureKind::kPc);
  EXPECT_LT(plane_max(pc.grid), 1e-3);
}

TEST(PhaseCongruency, StepEdgeStandsOut) {
  // The noise threshold is estimated from the data; a perfectly clean
  // step leaves it at zero and lets lone low-frequency responses in the
  // flat parts reach high PC. Two grey levels of sensor noise restore it.
  Plane p = step_edge(128);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 2.0);
  for (double& v : p.samples()) v = 25.0 + 204.0 * v + noise(rng);
  const auto pc = phase_congruency(p);
  double edge = 0.0, flat = 0.0;
  for (std::size_t y = 8; y < 120; ++y) {
    edge += std::max(pc.grid(63, y), pc.grid(64, y));
    flat += 0.5 * (pc.grid(32, y) + pc.grid(96, y));
  }
  EXPECT_GE(edge, 10.0 * flat);
  for (double v : pc.grid.samples()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(PhaseCongruency, OffsetInvariant) {
  const Plane p = test::random_plane(48, 40, 8, 0.0, 255.0);
  const auto a = phase_congruency(p), b = phase_congruency(offset(p, 30.0));
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(a.grid.samples()[k], b.grid.samples()[k], 1e-9);
}

TEST(PhaseCongruency, TooSmall) {
  EXPECT_EQ(code_of([] { phase_congruency(Plane(31, 64)); }), Errc::kImageTooSmall);
}

TEST(SpectralResidual, ConstantIsZero) {
  for (auto [w, h] : {std::pair<std::size_t, std::size_t>{64, 64}, {100, 70}}) {
    const auto sr = spectral_residual(Plane(w, h, 77.0));
    EXPECT_EQ(sr.kind, FeatureKind::kSr);
    EXPECT_LT(plane_max(sr.grid), 1e-6);
  }
}

TEST(SpectralResidual, DotIsMostSalient) {
  for (std::size_t n : {64u, 128u}) {
    Plane p(n, n);
    const std::size_t cx = n / 4 + 3, cy = n / 2 + 5;
    for (std::size_t y = cy - n / 64; y <= cy + n / 64; ++y)
      for (std::size_t x = cx - n / 64; x <= cx + n / 64; ++x) p(x, y) = 255.0;
    const auto sr = spectral_residual(p);
    const auto it = std::max_element(sr.grid.samples().begin(), sr.grid.samples().end());
    const auto idx = static_cast<std::size_t>(it - sr.grid.samples().begin());
    EXPECT_NEAR(static_cast<double>(idx % n), static_cast<double>(cx), 1.0 + n / 64.0) << n;
    EXPECT_NEAR(static_cast<double>(idx / n), static_cast<double>(cy), 1.0 + n / 64.0) << n;
  }
}

TEST(SpectralResidual, OffsetInvariantAndBounded) {
  const Plane p = test::random_plane(80, 60, 9, 0.0, 200.0);
  const auto a = spectral_residual(p), b = spectral_residual(offset(p, 40.0));
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_NEAR(a.grid.samples()[k], b.grid.samples()[k], 1e-6);
    EXPECT_GE(a.grid.samples()[k], 0.0);
    EXPECT_LE(a.grid.samples()[k], 1.0);
  }
}

TEST(Similarity, AnalyticAndErrors) {
  const double c = 160.0;
  const FeatureMap zero{FeatureKind::kGm, Plane(3, 2, 0.0)};
  const FeatureMap root{FeatureKind::kGm, Plane(3, 2, std::sqrt(c))};
  for (double v : test::values(similarity_map(zero, root, c).grid)) EXPECT_NEAR(v, 0.5, 1e-15);
  for (double v : test::values(similarity_map(root, root, c).grid)) EXPECT_EQ(v, 1.0);

  const FeatureMap pc{FeatureKind::kPc, Plane(3, 2, 0.0)};
  EXPECT_EQ(code_of([&] { similarity_map(zero, pc, c); }), Errc::kKindMismatch);
  EXPECT_EQ(code_of([&] { similarity_map(zero, FeatureMap{FeatureKind::kGm, Plane(2, 2)}, c); }),
            Errc::kDimensionMismatch);
  EXPECT_EQ(code_of([&] { similarity_map(zero, root, 0.0); }), Errc::kInvalidArgument);
}

TEST(Similarity, SymmetricBounded) {
  const FeatureMap a{FeatureKind::kSr, test::random_plane(8, 8, 1)};
  const FeatureMap b{FeatureKind::kSr, test::random_plane(8, 8, 2)};
  const auto ab = similarity_map(a, b, SimilarityConstants::kSr);
  EXPECT_EQ(ab.grid, similarity_map(b, a, SimilarityConstants::kSr).grid);
  for (double v : ab.grid.samples()) {
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Similarity, FrozenConstants) {
  EXPECT_EQ(SimilarityConstants::kGmFsim, 160.0);
  EXPECT_EQ(SimilarityConstants::kGmSrsim, 225.0);
  EXPECT_EQ(SimilarityConstants::kPc, 0.85);
  EXPECT_EQ(SimilarityConstants::kSr, 0.4);
  EXPECT_EQ(SimilarityConstants::kTau, 0.4);
}

}  // namespace
}  // namespace bless

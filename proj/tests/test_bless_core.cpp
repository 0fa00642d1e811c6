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

#include <cmath>
#include <functional>

#include "bless/error.hpp"
#include "bless/image.hpp"
#include "bless/spatiochromatic.hpp"
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

// Brute-force surround: mean of squares over the (2r+1)^2 window minus
// the centre, mirrored at the borders.
double surround_oracle(const Plane& p, std::size_t x, std::size_t y, std::size_t r) {
  auto mirror = [](std::ptrdiff_t i, std::ptrdiff_t n) {
    while (i < 0 || i >= n) i = i < 0 ? -1 - i : 2 * n - 1 - i;
    return static_cast<std::size_t>(i);
  };
  double s = 0.0;
  const auto R = static_cast<std::ptrdiff_t>(r);
  for (std::ptrdiff_t dy = -R; dy <= R; ++dy)
    for (std::ptrdiff_t dx = -R; dx <= R; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const double v = p(mirror(static_cast<std::ptrdiff_t>(x) + dx, static_cast<std::ptrdiff_t>(p.width())),
                         mirror(static_cast<std::ptrdiff_t>(y) + dy, static_cast<std::ptrdiff_t>(p.height())));
      s += v * v;
    }
  const double n = static_cast<double>((2 * r + 1) * (2 * r + 1) - 1);
  const double c = p(x, y);
  return c == 0.0 ? 0.0 : c * c / (c * c + s / n);
}

TEST(Surround, Radius) {
  EXPECT_EQ(surround_radius(1, 3.0), 3u);
  EXPECT_EQ(surround_radius(2, 3.0), 6u);
  EXPECT_EQ(surround_radius(3, 3.0), 12u);
  EXPECT_EQ(surround_radius(1, 1.5), 2u);
}

TEST(Surround, MatchesBruteForce) {
  const Plane p = test::random_plane(21, 15, 5, -1.0, 1.0);
  const Plane z = surround_contrast(p, 1, 1.0);
  for (std::size_t y = 0; y < p.height(); ++y)
    for (std::size_t x = 0; x < p.width(); ++x) EXPECT_NEAR(z(x, y), surround_oracle(p, x, y, 1), 1e-12);
}

TEST(Surround, AnalyticCases) {
  // Equal magnitude everywhere: the surround RMS equals |c|.
  Plane checker(9, 9);
  for (std::size_t y = 0; y < 9; ++y)
    for (std::size_t x = 0; x < 9; ++x) checker(x, y) = (x + y) % 2 ? 0.3 : -0.3;
  for (double v : test::values(surround_contrast(checker, 1))) EXPECT_DOUBLE_EQ(v, 0.5);

  Plane dot(15, 15);
  dot(7, 7) = 2.0;
  const Plane z = surround_contrast(dot, 1, 1.0);
  EXPECT_EQ(z(7, 7), 1.0);  // empty surround
  EXPECT_EQ(z(0, 0), 0.0);  // zero centre
  EXPECT_EQ(z(6, 7), 0.0);
  for (double v : z.samples()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Ecsf, FloorAndPeak) {
  const EcsfConfig cfg;
  const Plane zeros(4, 4, 0.0), ones(4, 4, 1.0);
  for (std::size_t s = 1; s <= 7; ++s) {
    for (ChannelClass cls : {ChannelClass::kAchromatic, ChannelClass::kChromatic}) {
      const double k = ecsf_floor(s, cls, cfg);
      EXPECT_GT(k, 0.0);
      for (double v : test::values(ecsf_adjust(zeros, s, cls, cfg))) EXPECT_EQ(v, k);
    }
  }
  const double k3 = ecsf_floor(3, ChannelClass::kAchromatic, cfg);
  EXPECT_DOUBLE_EQ(ecsf_gain(3, ChannelClass::kAchromatic, cfg), 1.0);
  EXPECT_DOUBLE_EQ(k3, 0.25);
  for (double v : test::values(ecsf_adjust(ones, 3, ChannelClass::kAchromatic, cfg))) EXPECT_DOUBLE_EQ(v, 1.25);
  EXPECT_DOUBLE_EQ(ecsf_gain(4, ChannelClass::kChromatic, cfg), 1.0);
  EXPECT_LT(ecsf_gain(1, ChannelClass::kChromatic, cfg), ecsf_gain(1, ChannelClass::kAchromatic, cfg));
  // Far from the peak the absolute floor takes over.
  EXPECT_DOUBLE_EQ(ecsf_floor(40, ChannelClass::kAchromatic, cfg), cfg.min_floor);
}

TEST(Ecsf, Errors) {
  const EcsfConfig cfg;
  EXPECT_EQ(code_of([&] { ecsf_adjust(Plane(2, 2), 1, static_cast<ChannelClass>(9), cfg); }),
            Errc::kUnknownChannelClass);
  EcsfConfig bad;
  bad.chromatic.floor_gain = 0.0;
  EXPECT_EQ(code_of([&] { bad.validate(); }), Errc::kConfigError);
}

TEST(Tau, ConstantGreyIsFlat) {
  const Plane g(64, 64, 0.5);
  const auto tau = compute_tau(PlanarImage(ColorSpace::kRgbSrgb, {g, g, g}));
  const double lo = plane_min(tau.tau), hi = plane_max(tau.tau);
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi - lo, 1e-6 * plane_mean(tau.tau));
}

TEST(Tau, DeterministicAndShaped) {
  const PlanarImage img = test::random_image(48, 40, 3);
  const auto a = compute_tau(img), b = compute_tau(img);
  EXPECT_EQ(a.tau, b.tau);
  EXPECT_EQ(a.tau.width(), 48u);
  EXPECT_EQ(a.tau.height(), 40u);
  for (double v : a.tau.samples()) EXPECT_GE(v, 0.0);
}

TEST(Tau, ChannelPassesDcThroughResidual) {
  // With a flat channel every detail plane is zero, so tau^i is the input.
  TauConfig cfg;
  const Plane flat(32, 32, 0.25);
  const Plane out = compute_tau_channel(flat, ChannelClass::kAchromatic, cfg);
  for (double v : out.samples()) EXPECT_NEAR(v, 0.25, 1e-14);
}

TEST(Tau, RejectsBadGamma) {
  TauConfig cfg;
  cfg.gamma = 0.0;
  EXPECT_EQ(code_of([&] { compute_tau(test::random_image(32, 32, 1), cfg); }), Errc::kNonPositiveGamma);
}

TEST(BlessMap, AnalyticValues) {
  const SpatiochromaticMap one{Plane(2, 2, 1.0)}, zero{Plane(2, 2, 0.0)};
  for (double v : test::values(bless_map(one, zero, 0.4).grid)) EXPECT_NEAR(v, 0.4 / 1.4, 1e-15);
  for (double v : test::values(bless_map(one, one).grid)) EXPECT_EQ(v, 1.0);
  EXPECT_EQ(code_of([&] { bless_map(one, SpatiochromaticMap{Plane(3, 2)}); }), Errc::kDimensionMismatch);
  EXPECT_EQ(code_of([&] { bless_map(one, zero, 0.0); }), Errc::kInvalidArgument);
}

TEST(BlessMap, SymmetricAndBounded) {
  const SpatiochromaticMap a{test::random_plane(9, 9, 1, 0.0, 3.0)}, b{test::random_plane(9, 9, 2, 0.0, 3.0)};
  const auto ab = bless_map(a, b), ba = bless_map(b, a);
  EXPECT_EQ(ab.grid, ba.grid);
  for (double v : ab.grid.samples()) {
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(BlessScore, Mean) {
  EXPECT_EQ(bless_score(SimilarityMap{Plane(3, 3, 1.0)}), 1.0);
  EXPECT_DOUBLE_EQ(bless_score(SimilarityMap{Plane(2, 1, std::vector<double>{0.2, 0.6})}), 0.4);
  const SimilarityMap m{test::random_plane(7, 5, 4)};
  const double s = bless_score(m);
  EXPECT_GE(s, plane_min(m.grid));
  EXPECT_LE(s, plane_max(m.grid));
  EXPECT_EQ(code_of([] { bless_score(SimilarityMap{}); }), Errc::kEmptyMap);
}

TEST(BlessScore, IdentityOnBundledImages) {
  for (const char* name : {"astronaut", "coffee"}) {
    const auto tau = compute_tau(test::load_data_image(name));
    EXPECT_EQ(bless_score(bless_map(tau, tau)), 1.0) << name;
  }
}

}  // namespace
}  // namespace bless

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

#include "bless/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bless/error.hpp"
#include "bless/fft.hpp"
#include "bless/kernels.hpp"
#include "bless/resample.hpp"

namespace bless {

namespace {

constexpr std::array<double, 9> kScharrX = {3.0 / 16, 0.0, -3.0 / 16, 10.0 / 16, 0.0, -10.0 / 16,
                                            3.0 / 16, 0.0, -3.0 / 16};
constexpr std::array<double, 9> kScharrY = {3.0 / 16, 10.0 / 16, 3.0 / 16, 0.0, 0.0, 0.0,
                                            -3.0 / 16, -10.0 / 16, -3.0 / 16};
constexpr std::array<double, 9> kSobelX = {1.0 / 4, 0.0, -1.0 / 4, 2.0 / 4, 0.0, -2.0 / 4, 1.0 / 4, 0.0, -1.0 / 4};
constexpr std::array<double, 9> kSobelY = {1.0 / 4, 2.0 / 4, 1.0 / 4, 0.0, 0.0, 0.0, -1.0 / 4, -2.0 / 4, -1.0 / 4};

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

std::vector<double> gaussian_taps(double sigma) {
  const auto radius = static_cast<std::size_t>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double total = 0.0;
  for (std::size_t i = 0; i < taps.size(); ++i) {
    const double d = static_cast<double>(i) - static_cast<double>(radius);
    taps[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

// Box mean with replicated borders, square window of odd side.
Plane box_mean_replicate(const Plane& in, std::size_t side) {
  const auto r = static_cast<std::ptrdiff_t>(side / 2);
  const auto w = static_cast<std::ptrdiff_t>(in.width());
  const auto h = static_cast<std::ptrdiff_t>(in.height());
  Plane out(in.width(), in.height());
  const double norm = 1.0 / static_cast<double>(side * side);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t dy = -r; dy <= r; ++dy) {
        const auto yy = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(y + dy, 0, h - 1));
        for (std::ptrdiff_t dx = -r; dx <= r; ++dx) {
          const auto xx = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(x + dx, 0, w - 1));
          acc += in(xx, yy);
        }
      }
      out(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc * norm;
    }
  }
  return out;
}

}  // namespace

FeatureMap gradient_magnitude(const Plane& luma, GradientOperator op) {
  if (luma.empty()) throw Error(Errc::kEmptyPlane, "gradient_magnitude on empty plane");
  const bool scharr = op == GradientOperator::kScharr;
  const Plane gx = kernels::correlate3x3(luma, scharr ? kScharrX : kSobelX);
  const Plane gy = kernels::correlate3x3(luma, scharr ? kScharrY : kSobelY);
  Plane gm(luma.width(), luma.height());
  for (std::size_t i = 0; i < gm.size(); ++i) {
    gm.samples()[i] = std::hypot(gx.samples()[i], gy.samples()[i]);
  }
  return FeatureMap{FeatureKind::kGm, std::move(gm)};
}

FeatureMap phase_congruency(const Plane& luma, const PcParams& p) {
  const std::size_t w = luma.width();
  const std::size_t h = luma.height();
  if (std::min(w, h) < kMinPhaseCongruencySize) {
    throw Error(Errc::kImageTooSmall, "phase congruency needs min dimension >= " +
                                          std::to_string(kMinPhaseCongruencySize));
  }
  const std::size_t n = w * h;
  const fft::ComplexPlane spectrum = fft::forward(luma);

  // Frequency-domain polar grid, DC at (0, 0).
  std::vector<double> radius(n);
  std::vector<double> sin_theta(n);
  std::vector<double> cos_theta(n);
  std::vector<double> lowpass(n);
  for (std::size_t y = 0; y < h; ++y) {
    const double fy = fft::bin_frequency(y, h);
    for (std::size_t x = 0; x < w; ++x) {
      const double fx = fft::bin_frequency(x, w);
      const std::size_t i = y * w + x;
      const double r = std::hypot(fx, fy);
      lowpass[i] = 1.0 / (1.0 + std::pow(r / p.lowpass_cutoff, 2.0 * p.lowpass_order));
      radius[i] = (x == 0 && y == 0) ? 1.0 : r;
      const double theta = std::atan2(-fy, fx);
      sin_theta[i] = std::sin(theta);
      cos_theta[i] = std::cos(theta);
    }
  }

  std::vector<std::vector<double>> radial(p.scales, std::vector<double>(n));
  const double log_sigma = std::log(p.sigma_on_f);
  for (std::size_t s = 0; s < p.scales; ++s) {
    const double wavelength = p.min_wavelength * std::pow(p.mult, static_cast<double>(s));
    const double fo = 1.0 / wavelength;
    for (std::size_t i = 0; i < n; ++i) {
      const double l = std::log(radius[i] / fo);
      radial[s][i] = std::exp(-(l * l) / (2.0 * log_sigma * log_sigma)) * lowpass[i];
    }
    radial[s][0] = 0.0;
  }

  const double theta_sigma = std::numbers::pi / static_cast<double>(p.orientations) / p.d_theta_on_sigma;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> energy_all(n, 0.0);
  std::vector<double> amplitude_all(n, 0.0);

  for (std::size_t o = 0; o < p.orientations; ++o) {
    const double angle = static_cast<double>(o) * std::numbers::pi / static_cast<double>(p.orientations);
    const double ca = std::cos(angle);
    const double sa = std::sin(angle);
    std::vector<double> spread(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double ds = sin_theta[i] * ca - cos_theta[i] * sa;
      const double dc = cos_theta[i] * ca + sin_theta[i] * sa;
      const double dtheta = std::abs(std::atan2(ds, dc));
      spread[i] = std::exp(-(dtheta * dtheta) / (2.0 * theta_sigma * theta_sigma));
    }

    std::vector<fft::ComplexPlane> responses;
    std::vector<std::vector<double>> spatial_filters;
    std::vector<double> sum_amp(n, 0.0);
    std::vector<double> sum_even(n, 0.0);
    std::vector<double> sum_odd(n, 0.0);
    double filter_energy = 0.0;

    for (std::size_t s = 0; s < p.scales; ++s) {
      fft::ComplexPlane filtered(w, h);
      fft::ComplexPlane filter(w, h);
      for (std::size_t i = 0; i < n; ++i) {
        const double f = radial[s][i] * spread[i];
        filter.data[i] = f;
        filtered.data[i] = spectrum.data[i] * f;
        if (s == 0) filter_energy += f * f;
      }
      fft::ComplexPlane eo = fft::inverse(filtered);
      const fft::ComplexPlane spatial = fft::inverse(filter);
      std::vector<double> sf(n);
      for (std::size_t i = 0; i < n; ++i) {
        sf[i] = spatial.data[i].real() * static_cast<double>(n) * inv_sqrt_n;
        sum_amp[i] += std::abs(eo.data[i]);
        sum_even[i] += eo.data[i].real();
        sum_odd[i] += eo.data[i].imag();
      }
      responses.push_back(std::move(eo));
      spatial_filters.push_back(std::move(sf));
    }

    std::vector<double> energy(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double x_energy = std::hypot(sum_even[i], sum_odd[i]) + p.epsilon;
      const double mean_e = sum_even[i] / x_energy;
      const double mean_o = sum_odd[i] / x_energy;
      double e = 0.0;
      for (std::size_t s = 0; s < p.scales; ++s) {
        const double even = responses[s].data[i].real();
        const double odd = responses[s].data[i].imag();
        e += even * mean_e + odd * mean_o - std::abs(even * mean_o - odd * mean_e);
      }
      energy[i] = e;
    }

    // Noise threshold from the smallest-scale response (Rayleigh model).
    std::vector<double> amp2(n);
    for (std::size_t i = 0; i < n; ++i) amp2[i] = std::norm(responses[0].data[i]);
    const double mean_e2n = -median_of(std::move(amp2)) / std::log(0.5);
    const double noise_power = filter_energy > 0.0 ? mean_e2n / filter_energy : 0.0;

    double sum_an2 = 0.0;
    double sum_aiaj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < p.scales; ++s) {
        sum_an2 += spatial_filters[s][i] * spatial_filters[s][i];
        for (std::size_t t = s + 1; t < p.scales; ++t) sum_aiaj += spatial_filters[s][i] * spatial_filters[t][i];
      }
    }
    const double noise_energy2 = 2.0 * noise_power * sum_an2 + 4.0 * noise_power * sum_aiaj;
    const double tau = std::sqrt(std::max(noise_energy2, 0.0) / 2.0);
    const double noise_mean = tau * std::sqrt(std::numbers::pi / 2.0);
    const double noise_sigma = std::sqrt((2.0 - std::numbers::pi / 2.0) * tau * tau);
    const double threshold = (noise_mean + p.k * noise_sigma) / 1.7;

    for (std::size_t i = 0; i < n; ++i) {
      energy_all[i] += std::max(energy[i] - threshold, 0.0);
      amplitude_all[i] += sum_amp[i];
    }
  }

  Plane pc(w, h);
  for (std::size_t i = 0; i < n; ++i) {
    pc.samples()[i] = std::clamp(energy_all[i] / (amplitude_all[i] + p.epsilon), 0.0, 1.0);
  }
  return FeatureMap{FeatureKind::kPc, std::move(pc)};
}

FeatureMap spectral_residual(const Plane& luma, const SrParams& p) {
  if (luma.empty()) throw Error(Errc::kEmptyPlane, "spectral_residual on empty plane");
  if (p.analysis_size < 2 || p.box % 2 == 0 || !(p.sigma > 0.0)) {
    throw Error(Errc::kInvalidArgument, "spectral residual needs analysis_size >= 2, odd box, sigma > 0");
  }
  const std::size_t a = p.analysis_size;
  Plane small = resize_bicubic(luma, a, a);

  // Rounding noise scales with the raw magnitude, offset included.
  double peak = 0.0;
  for (double v : small.samples()) peak = std::max(peak, std::abs(v));
  const double mean = plane_mean(small);
  for (double& v : small.samples()) v -= mean;

  fft::ComplexPlane spectrum = fft::forward(small);
  spectrum.data[0] = 0.0;
  const double tolerance = 1e-9 * static_cast<double>(a * a) * peak + 1e-300;

  // Bins without support (DC, numerically empty) stay out of the local
  // log-spectrum average instead of dragging it towards log(tolerance).
  Plane log_amp(a, a), mask(a, a);
  std::vector<bool> support(a * a);
  for (std::size_t i = 0; i < a * a; ++i) {
    const double mag = std::abs(spectrum.data[i]);
    support[i] = mag > tolerance;
    log_amp.samples()[i] = support[i] ? std::log(mag) : 0.0;
    mask.samples()[i] = support[i] ? 1.0 : 0.0;
  }
  Plane smoothed = box_mean_replicate(log_amp, p.box);
  const Plane coverage = box_mean_replicate(mask, p.box);
  for (std::size_t i = 0; i < a * a; ++i)
    if (support[i]) smoothed.samples()[i] /= coverage.samples()[i];

  fft::ComplexPlane residual(a, a);
  for (std::size_t i = 0; i < a * a; ++i) {
    if (!support[i]) continue;
    const double r = log_amp.samples()[i] - smoothed.samples()[i];
    residual.data[i] = std::polar(std::exp(r), std::arg(spectrum.data[i]));
  }
  const fft::ComplexPlane back = fft::inverse(residual);
  Plane saliency(a, a);
  for (std::size_t i = 0; i < a * a; ++i) saliency.samples()[i] = std::norm(back.data[i]);

  const auto taps = gaussian_taps(p.sigma);
  saliency = kernels::convolve_cols(kernels::convolve_rows(saliency, taps, 1), taps, 1);

  const double lo = plane_min(saliency);
  const double hi = plane_max(saliency);
  if (hi - lo > 0.0) {
    for (double& v : saliency.samples()) v = (v - lo) / (hi - lo);
  } else {
    std::fill(saliency.samples().begin(), saliency.samples().end(), 0.0);
  }

  Plane out = resize_bicubic(saliency, luma.width(), luma.height());
  for (double& v : out.samples()) v = std::clamp(v, 0.0, 1.0);
  return FeatureMap{FeatureKind::kSr, std::move(out)};
}

SimilarityMap similarity_map(const FeatureMap& ref, const FeatureMap& dist, double c) {
  if (ref.kind != dist.kind) {
    throw Error(Errc::kKindMismatch, std::string(to_string(ref.kind)) + " vs " + to_string(dist.kind));
  }
  if (!(c > 0.0)) throw Error(Errc::kInvalidArgument, "similarity constant must be positive");
  require_same_shape(ref.grid, dist.grid, "similarity_map");
  return SimilarityMap{kernels::similarity(ref.grid, dist.grid, c)};
}

}  // namespace bless

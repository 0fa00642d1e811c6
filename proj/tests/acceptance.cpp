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

// Acceptance suite: one line per criterion, non-zero exit on any FAIL.
// Criterion 9 needs the TID2013 database and runs only when
// BLESS_TID2013_MANIFEST names its manifest CSV.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bless/benchmark.hpp"
#include "bless/cli.hpp"
#include "bless/estimators.hpp"
#include "bless/grouplet.hpp"
#include "bless/spatiochromatic.hpp"
#include "bless/wavelet.hpp"
#include "support/synth.hpp"

namespace {

using namespace bless;
using Clock = std::chrono::steady_clock;

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) { return {ok ? Verdict::kPass : Verdict::kFail, std::move(detail)}; }

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* kImages[] = {"astronaut", "coffee", "chelsea", "rocket", "hubble"};

Outcome identity() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const char* name : kImages) {
    const PlanarImage img = test::load_data_image(name);
    for (const auto& r : score_pair(img, img, kPairedEstimators)) worst = std::max(worst, std::abs(r.score - 1.0));
  }
  const double secs = seconds_since(t0);
  return pass_if(worst <= 1e-9 && secs < 30.0, "max |score - 1| = " + fmt("%.3g", worst) + ", " +
                                                  fmt("%.2f", secs) + " s");
}

Outcome round_trip() {
  double worst_w = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Plane p = test::random_plane(64, 64, 1000 + seed);
    const Plane back = wavelet_inverse(wavelet_forward(p, default_wavelet_scales(64, 64)));
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      num += std::pow(back.samples()[k] - p.samples()[k], 2);
      den += std::pow(p.samples()[k], 2);
    }
    worst_w = std::max(worst_w, std::sqrt(num / den));
  }
  double worst_g = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Plane p = test::random_plane(64, 64, 2000 + seed);
    const GroupletStack g = grouplet_forward(p, default_grouplet_depth(64));
    for (std::size_t j = 1; j <= g.depth() + 1; ++j) {
      const std::size_t span = std::size_t{1} << (j - 1);
      const Plane& a = g.approximation(j);
      for (std::size_t y = 0; y < a.height(); ++y)
        for (std::size_t m = 0; m < a.width(); ++m) {
          double s = 0.0;
          for (std::size_t k = 0; k < span; ++k) s += p(m * span + k, y);
          worst_g = std::max(worst_g, std::abs(a(m, y) - s / static_cast<double>(span)));
        }
    }
  }
  return pass_if(worst_w < 1e-6 && worst_g <= 1e-10,
                 "wavelet rel L2 " + fmt("%.3g", worst_w) + ", grouplet mean error " + fmt("%.3g", worst_g));
}

Outcome analytic() {
  const double bless = bless_map({Plane(1, 1, 1.0)}, {Plane(1, 1, 0.0)}, 0.4).grid(0, 0);
  // Centre and surround of equal magnitude.
  Plane checker(9, 9);
  for (std::size_t y = 0; y < 9; ++y)
    for (std::size_t x = 0; x < 9; ++x) checker(x, y) = (x + y) % 2 ? 0.6 : -0.6;
  const double z = surround_contrast(checker, 1)(4, 4);
  const double pooled = weighted_pool(Plane(2, 1, std::vector<double>{0, 1}), Plane(2, 1, std::vector<double>{1, 3}));
  return pass_if(std::abs(bless - 0.285714) <= 1e-6 && z == 0.5 && pooled == 0.75,
                 "bless " + fmt("%.9f", bless) + ", z " + fmt("%.17g", z) + ", pool " + fmt("%.17g", pooled));
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n, mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> brute_average_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      less += w < v[i];
      equal += w == v[i];
    }
    r[i] = less + (equal + 1) / 2;
  }
  return r;
}

Outcome spearman_oracle() {
  std::vector<double> id = {1, 2, 3, 4, 5, 6, 7}, p = id;
  double worst = 0.0;
  std::size_t perms = 0;
  do {
    double d2 = 0;
    for (std::size_t i = 0; i < 7; ++i) d2 += (id[i] - p[i]) * (id[i] - p[i]);
    worst = std::max(worst, std::abs(spearman(id, p) - (1.0 - 6.0 * d2 / (7.0 * 48.0))));
    ++perms;
  } while (std::next_permutation(p.begin(), p.end()));

  std::mt19937_64 rng(2024);
  double worst_ties = 0.0;
  int tied = 0;
  while (tied < 100) {
    std::uniform_int_distribution<int> len(4, 40), levels(2, 6);
    const int n = len(rng);
    std::uniform_int_distribution<int> lx(0, levels(rng)), ly(0, levels(rng));
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = lx(rng);
    for (auto& v : y) v = ly(rng);
    const auto rx = brute_average_ranks(x), ry = brute_average_ranks(y);
    if (std::all_of(rx.begin(), rx.end(), [&](double v) { return v == rx[0]; }) ||
        std::all_of(ry.begin(), ry.end(), [&](double v) { return v == ry[0]; }))
      continue;
    worst_ties = std::max(worst_ties, std::abs(spearman(x, y) - pearson(rx, ry)));
    ++tied;
  }
  return pass_if(perms == 5040 && worst <= 1e-12 && worst_ties <= 1e-12,
                 std::to_string(perms) + " permutations, max error " + fmt("%.3g", worst) + "; 100 tied, max error " +
                     fmt("%.3g", worst_ties));
}

Outcome degradation() {
  const auto t0 = Clock::now();
  const double radii[] = {0, 1, 2, 4};
  const int qualities[] = {75, 40, 15, 5};
  const std::vector<double> strength = {0, 1, 2, 3};
  double worst = -INFINITY;
  std::string where;
  for (const char* name : {"astronaut", "coffee", "chelsea"}) {
    const PlanarImage ref = test::load_data_image(name);
    for (int family = 0; family < 2; ++family) {
      std::vector<std::vector<double>> scores(kAllEstimators.size());
      for (int k = 0; k < 4; ++k) {
        const PlanarImage dist = family == 0 ? test::gaussian_blur(ref, radii[k]) : test::jpeg_like(ref, qualities[k]);
        const auto results = score_pair(ref, dist, kAllEstimators);
        for (std::size_t e = 0; e < results.size(); ++e) scores[e].push_back(results[e].score);
      }
      for (std::size_t e = 0; e < kAllEstimators.size(); ++e) {
        const double r = spearman(strength, scores[e]);
        if (r >= worst) {
          worst = r;
          where = std::string(name) + (family == 0 ? " blur " : " jpeg ") + to_string(kAllEstimators[e]);
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return pass_if(worst <= -0.9 && secs < 300.0,
                 "worst SRCC " + fmt("%.3f", worst) + " (" + where + "), " + fmt("%.1f", secs) + " s");
}

Outcome colour_sensitivity() {
  struct Edit {
    double radians, saturation;
  };
  const Edit edits[] = {{0.6, 1.0}, {-1.2, 1.0}, {0.0, 0.3}, {0.0, 1.8}};
  std::vector<Estimator> est = {Estimator::kFsim, Estimator::kSrsim, Estimator::kBlessFsim, Estimator::kBlessSrsim};
  double max_luma = 0.0, drop[4] = {0, 0, 0, 0};
  bool ok = true;
  int pairs = 0;
  for (const char* name : kImages) {
    const PlanarImage ref = test::load_data_image(name);
    for (const Edit& e : edits) {
      const PlanarImage dist = test::chroma_edit(ref, e.radians, e.saturation);
      max_luma = std::max(max_luma, test::luma_max_abs_diff(ref, dist));
      const auto r = score_pair(ref, dist, est);
      double d[4];
      for (int i = 0; i < 4; ++i) drop[i] += d[i] = 1.0 - r[i].score;
      ok = ok && d[2] > 0.0 && d[3] > 0.0 && d[2] >= 2.0 * d[0] && d[3] >= 2.0 * d[1];
      ++pairs;
    }
  }
  for (double& v : drop) v /= pairs;
  return pass_if(ok, std::to_string(pairs) + " pairs, luma drift " + fmt("%.2g", max_luma) +
                         "; mean 1-score FSIM " + fmt("%.2g", drop[0]) + " vs BLESS_FSIM " + fmt("%.3g", drop[2]) +
                         ", SRSIM " + fmt("%.2g", drop[1]) + " vs BLESS_SRSIM " + fmt("%.3g", drop[3]));
}

Outcome symmetry() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(48, 96);
  double worst = 0.0;
  bool bounded = true;
  for (int i = 0; i < 50; ++i) {
    const std::size_t w = size(rng), h = size(rng);
    const PlanarImage a = test::random_image(w, h, rng());
    PlanarImage b = test::random_image(w, h, rng());
    if (i % 3 == 1) b = test::gaussian_blur(a, 1.0 + i % 4);
    if (i % 3 == 2) b = test::jpeg_like(a, 10 + i);
    const auto ab = score_pair(a, b, kAllEstimators), ba = score_pair(b, a, kAllEstimators);
    for (std::size_t e = 0; e < ab.size(); ++e) {
      worst = std::max(worst, std::abs(ab[e].score - ba[e].score));
      bounded = bounded && ab[e].score > 0.0 && ab[e].score <= 1.0;
    }
  }
  return pass_if(bounded && worst <= 1e-12, "max swap difference " + fmt("%.3g", worst));
}

Outcome significance_sanity() {
  bool ok = true;
  for (double r : {0.1, 0.5, 0.9})
    for (std::size_t n : {30u, 300u}) ok = ok && !significance(r, r, n);
  ok = ok && significance(0.9, 0.5, 1375);
  return pass_if(ok, "z(0.9, 0.5, 1375) = " + fmt("%.2f", significance_statistic(0.9, 0.5, 1375)));
}

Outcome tid2013() {
  const char* env = std::getenv("BLESS_TID2013_MANIFEST");
  if (env == nullptr || *env == '\0') return {Verdict::kSkip, "set BLESS_TID2013_MANIFEST to run"};
  const DatasetManifest m = load_manifest(env, Database::kTid13);
  const auto counts = category_counts(m);
  const bool counts_ok = m.rows.size() == 3000 && counts.at(Category::kColor) == 375 &&
                         counts.at(Category::kNoise) == 1375;

  const auto prefix = std::filesystem::temp_directory_path() / "bless_acceptance_tid2013";
  const std::string arg = "TID13=" + std::string(env);
  const std::string out = prefix.string();
  const char* argv[] = {"bless", "bench", arg.c_str(), "--out", out.c_str()};
  std::ostringstream sink, err;
  if (run_cli(5, argv, sink, err) != 0) return {Verdict::kFail, "bench failed: " + err.str()};
  std::ifstream in(out + ".json");
  const std::string json{std::istreambuf_iterator<char>(in), {}};
  const CorrelationReport rep = report_from_json(json);

  bool signs_ok = true;
  std::string detail = "counts " + std::string(counts_ok ? "match" : "MISMATCH") + "; Color change";
  for (const auto& p : default_pairs()) {
    const double c = rep.changes.at(p).at(Database::kTid13).at(Category::kColor).pct_change;
    signs_ok = signs_ok && c > 0.0;
    detail += std::string(" ") + to_string(p.second) + " " + fmt("%+.2f%%", c);
  }
  return pass_if(counts_ok && signs_ok, detail);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"identity", identity},
      {"transform round-trip", round_trip},
      {"analytic similarity cases", analytic},
      {"spearman oracle", spearman_oracle},
      {"degradation monotonicity", degradation},
      {"colour sensitivity", colour_sensitivity},
      {"symmetry and bounds", symmetry},
      {"significance sanity", significance_sanity},
      {"TID2013 categories", tid2013},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::kPass ? "PASS" : o.verdict == Verdict::kFail ? "FAIL" : "SKIP";
    failures += o.verdict == Verdict::kFail;
    std::printf("criterion %d %-28s %s  %s\n", index, c.name, tag, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

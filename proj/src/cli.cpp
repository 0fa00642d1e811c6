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

#include "bless/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bless/benchmark.hpp"
#include "bless/codec.hpp"
#include "bless/config.hpp"
#include "bless/error.hpp"
#include "bless/estimators.hpp"

namespace bless {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_path;
  bool no_downsample = false;
  int threads = 0;
  std::string emit_maps;
  bool skip_missing = false;
  bool verbose = false;
  std::vector<std::string> estimators;

  std::string ref, dist;     // score, maps
  std::string out;           // maps: directory, bench: file prefix
  std::vector<std::string> manifests;  // DB=PATH
  std::vector<std::string> pairs;      // BASE:ASSISTED
  bool check_files = false;
};

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Config resolve_config(const Options& o) {
  Config cfg = o.config_path.empty() ? Config{} : load_config(o.config_path);
  if (o.no_downsample) cfg.metric.downsample = false;
  return cfg;
}

std::vector<Estimator> resolve_estimators(const Options& o) {
  if (o.estimators.empty()) return {kPairedEstimators.begin(), kPairedEstimators.end()};
  std::vector<Estimator> out;
  for (const auto& name : o.estimators) {
    const auto e = parse_estimator(name);
    if (!e) throw Error(Errc::kInvalidArgument, "unknown estimator '" + name + "'");
    if (std::find(out.begin(), out.end(), *e) == out.end()) out.push_back(*e);
  }
  return out;
}

// Gray inputs are promoted to RGB so every estimator sees three channels.
PlanarImage load_srgb(const std::string& path) {
  PlanarImage img = decode_image_file(path);
  if (img.space() == ColorSpace::kGray) {
    const Plane& g = img.plane(0);
    return PlanarImage(ColorSpace::kRgbSrgb, {g, g, g});
  }
  return img;
}

Plane normalized(const Plane& p) {
  Plane out = p;
  const double hi = plane_max(p);
  for (double& v : out.samples()) v = hi > 0.0 ? std::clamp(v / hi, 0.0, 1.0) : 0.0;
  return out;
}

void write_png(const fs::path& path, const Plane& p) { write_file(path, encode_png(p)); }

void emit_maps(const fs::path& dir, const PlanarImage& ref, const PlanarImage& dist,
               const std::vector<QualityResult>& results, const MetricConfig& cfg) {
  fs::create_directories(dir);
  for (const auto& r : results) {
    const std::string name = to_string(r.estimator);
    Plane shown;
    try {
      shown = visualize_map(r.feature_map);
    } catch (const Error& e) {
      if (e.code() != Errc::kDegenerateMap) throw;
      shown = r.feature_map;  // flat map, e.g. identical inputs
      for (double& v : shown.samples()) v = std::clamp(v, 0.0, 1.0);
    }
    write_png(dir / (name + "_map.png"), shown);
    write_png(dir / (name + "_weight.png"), normalized(r.weight_map));
  }
  const auto tau_r = compute_tau(prepare_for_metric(ref, cfg), cfg.tau);
  const auto tau_d = compute_tau(prepare_for_metric(dist, cfg), cfg.tau);
  write_png(dir / "tau_ref.png", normalized(tau_r.tau));
  write_png(dir / "tau_dist.png", normalized(tau_d.tau));
  write_file(dir / "tau_ref.pgm", encode_pgm(normalized(tau_r.tau), 16));
  write_file(dir / "tau_dist.pgm", encode_pgm(normalized(tau_d.tau), 16));
}

int cmd_score(const Options& o, std::ostream& out, bool write_maps_to_out) {
  const Config cfg = resolve_config(o);
  const auto estimators = resolve_estimators(o);
  const PlanarImage ref = load_srgb(o.ref);
  const PlanarImage dist = load_srgb(o.dist);
  const auto results = score_pair(ref, dist, estimators, cfg.metric);
  for (const auto& r : results) out << to_string(r.estimator) << '\t' << fixed6(r.score) << '\n';
  if (write_maps_to_out) emit_maps(o.out, ref, dist, results, cfg.metric);
  if (!o.emit_maps.empty()) emit_maps(o.emit_maps, ref, dist, results, cfg.metric);
  return 0;
}

std::pair<Database, fs::path> split_manifest_arg(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos) return {Database::kCustom, arg};
  const auto db = parse_database(arg.substr(0, eq));
  if (!db) throw Error(Errc::kInvalidArgument, "unknown database in '" + arg + "'");
  return {*db, arg.substr(eq + 1)};
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  bool ok = true;
  for (const auto& arg : o.manifests) {
    const auto [db, path] = split_manifest_arg(arg);
    const DatasetManifest m = load_manifest(path, db);
    const auto counts = category_counts(m);
    out << to_string(db) << '\t' << "rows" << '\t' << m.rows.size();
    if (const auto total = reference_total(db)) {
      const bool match = *total == m.rows.size();
      ok = ok && match;
      out << "\texpected " << *total << (match ? "\tok" : "\tMISMATCH");
    }
    out << '\n';
    for (Category c : kCategories) {
      const std::size_t n = counts.contains(c) ? counts.at(c) : 0;
      const auto expected = reference_count(db, c);
      if (n == 0 && (!expected || *expected == 0)) continue;
      out << to_string(db) << '\t' << to_string(c) << '\t' << n;
      if (expected) {
        if (reference_count_double_counted(db, c)) {
          out << "\tpublished " << *expected << "\tskipped (code counted in two categories)";
        } else {
          const bool match = *expected == n;
          ok = ok && match;
          out << "\texpected " << *expected << (match ? "\tok" : "\tMISMATCH");
        }
      }
      out << '\n';
    }
    if (o.check_files) {
      std::set<std::string> paths;
      for (const auto& row : m.rows) {
        paths.insert(row.ref_path);
        paths.insert(row.dist_path);
      }
      for (const auto& p : paths) {
        if (!fs::exists(p)) {
          ok = false;
          err << "missing: " << p << '\n';
        }
      }
    }
  }
  return ok ? 0 : 1;
}

std::vector<EstimatorPair> resolve_pairs(const Options& o, std::vector<Estimator>& estimators) {
  std::vector<EstimatorPair> pairs;
  if (o.pairs.empty()) {
    for (const auto& p : default_pairs()) {
      const bool have = std::find(estimators.begin(), estimators.end(), p.first) != estimators.end() &&
                        std::find(estimators.begin(), estimators.end(), p.second) != estimators.end();
      if (have) pairs.push_back(p);
    }
  } else {
    for (const auto& spec : o.pairs) {
      const auto colon = spec.find(':');
      const auto b = parse_estimator(spec.substr(0, colon));
      const auto a = colon == std::string::npos ? std::nullopt : parse_estimator(spec.substr(colon + 1));
      if (!b || !a) throw Error(Errc::kInvalidArgument, "bad --pair '" + spec + "', expected BASE:ASSISTED");
      pairs.emplace_back(*b, *a);
      for (Estimator e : {*b, *a})
        if (std::find(estimators.begin(), estimators.end(), e) == estimators.end()) estimators.push_back(e);
    }
  }
  if (pairs.empty()) throw Error(Errc::kInvalidArgument, "no baseline/assisted pair among the requested estimators");
  return pairs;
}

struct Job {
  std::string pair_id;
  Database db;
  const ManifestRow* row;
};

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const Config cfg = resolve_config(o);
  auto estimators = resolve_estimators(o);
  const auto pairs = resolve_pairs(o, estimators);
  const FeatureNeeds needs = needs_for(estimators);

  std::vector<DatasetManifest> manifests;
  for (const auto& arg : o.manifests) {
    const auto [db, path] = split_manifest_arg(arg);
    manifests.push_back(load_manifest(path, db));
  }

  std::vector<Job> jobs;
  for (const auto& m : manifests) {
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      char id[32];
      std::snprintf(id, sizeof id, "/%06zu", i + 1);
      jobs.push_back({std::string(to_string(m.database)) + id, m.database, &m.rows[i]});
    }
  }

  // Reference features are shared by every row that names the same file.
  std::vector<std::string> refs;
  for (const auto& j : jobs) refs.push_back(j.row->ref_path);
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
  std::vector<std::optional<ImageFeatures>> ref_features(refs.size());
  std::vector<std::pair<std::size_t, std::size_t>> ref_dims(refs.size());
  std::vector<std::string> ref_errors(refs.size());

#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < refs.size(); ++i) {
    try {
      const PlanarImage img = load_srgb(refs[i]);
      ref_dims[i] = {img.width(), img.height()};
      ref_features[i] = extract_features(prepare_for_metric(img, cfg.metric), needs, cfg.metric);
    } catch (const std::exception& e) {
      ref_errors[i] = e.what();
    }
  }

  std::vector<std::optional<BenchmarkRecord>> records(jobs.size());
  std::vector<std::string> errors(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    const std::size_t r = static_cast<std::size_t>(
        std::lower_bound(refs.begin(), refs.end(), job.row->ref_path) - refs.begin());
    if (!ref_features[r]) {
      errors[i] = ref_errors[r];
      continue;
    }
    try {
      const PlanarImage img = load_srgb(job.row->dist_path);
      if (img.width() != ref_dims[r].first || img.height() != ref_dims[r].second)
        throw Error(Errc::kDimensionMismatch, job.row->dist_path + " differs in size from " + job.row->ref_path);
      const ImageFeatures fd = extract_features(prepare_for_metric(img, cfg.metric), needs, cfg.metric);
      BenchmarkRecord rec{job.pair_id, job.db, job.row->category, job.row->mos, {}};
      for (Estimator e : estimators) rec.scores[e] = evaluate(e, *ref_features[r], fd, cfg.metric).score;
      records[i] = std::move(rec);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }

  std::vector<BenchmarkRecord> kept;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (records[i]) {
      kept.push_back(std::move(*records[i]));
      continue;
    }
    if (!o.skip_missing) {
      err << "error: " << jobs[i].pair_id << ": " << errors[i] << '\n';
      return 2;
    }
    err << "warning: skipping " << jobs[i].pair_id << ": " << errors[i] << '\n';
  }
  std::sort(kept.begin(), kept.end(),
            [](const BenchmarkRecord& a, const BenchmarkRecord& b) { return a.pair_id < b.pair_id; });

  const CorrelationReport report = category_report(kept, pairs, cfg.significance);
  const std::string prefix = o.out.empty() ? std::string("bless_report") : o.out;
  if (const auto parent = fs::path(prefix).parent_path(); !parent.empty()) fs::create_directories(parent);
  const std::string json = report_to_json(report);
  const std::string csv = report_to_csv(report);
  write_file(prefix + ".json", std::span(reinterpret_cast<const std::uint8_t*>(json.data()), json.size()));
  write_file(prefix + ".csv", std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));

  std::string scores = "pair_id,database,category,mos";
  for (Estimator e : estimators) scores += std::string(",") + to_string(e);
  scores += '\n';
  for (const auto& rec : kept) {
    char mos[32];
    std::snprintf(mos, sizeof mos, "%.6f", rec.mos);
    scores += rec.pair_id + ',' + to_string(rec.database) + ',' + to_string(rec.category) + ',' + mos;
    for (Estimator e : estimators) scores += ',' + fixed6(rec.scores.at(e));
    scores += '\n';
  }
  write_file(prefix + "_scores.csv",
             std::span(reinterpret_cast<const std::uint8_t*>(scores.data()), scores.size()));

  out << csv;
  if (o.verbose) {
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    err << "bench: " << kept.size() << " pairs in " << secs << " s\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Full-reference image quality estimators with BLeSS assistance", "bless"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_flag("--no-downsample", o.no_downsample, "score at full resolution");
  app.add_option("--threads", o.threads, "OpenMP worker count (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--emit-maps", o.emit_maps, "also write quality maps to this directory");
  app.add_flag("--skip-missing", o.skip_missing, "bench: warn about unreadable rows instead of failing");
  app.add_flag("-v,--verbose", o.verbose, "timing information on stderr");

  auto* score = app.add_subcommand("score", "print one NAME<TAB>score line per estimator");
  score->add_option("ref", o.ref, "reference image")->required();
  score->add_option("dist", o.dist, "distorted image")->required();
  score->add_option("-e,--estimator", o.estimators, "estimator name, repeatable");

  auto* maps = app.add_subcommand("maps", "write quality, weight and tau maps as images");
  maps->add_option("ref", o.ref, "reference image")->required();
  maps->add_option("dist", o.dist, "distorted image")->required();
  maps->add_option("-o,--out", o.out, "output directory")->required();
  maps->add_option("-e,--estimator", o.estimators, "estimator name, repeatable");

  auto* bench = app.add_subcommand("bench", "correlate scores with MOS over manifests");
  bench->add_option("manifests", o.manifests, "DB=manifest.csv (DB: LIVE, MULTI, TID13, CUSTOM)")->required();
  bench->add_option("-o,--out", o.out, "output prefix for .json, .csv and _scores.csv");
  bench->add_option("-e,--estimator", o.estimators, "estimator name, repeatable");
  bench->add_option("--pair", o.pairs, "BASE:ASSISTED estimator pair, repeatable");

  auto* verify = app.add_subcommand("verify-manifest", "check category counts against the published tables");
  verify->add_option("manifests", o.manifests, "DB=manifest.csv")->required();
  verify->add_flag("--check-files", o.check_files, "also check that every image exists");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    if (score->parsed()) return cmd_score(o, out, false);
    if (maps->parsed()) return cmd_score(o, out, true);
    if (bench->parsed()) return cmd_bench(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace bless

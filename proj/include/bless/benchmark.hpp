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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bless/estimators.hpp"

namespace bless {

enum class Database { kLive, kMulti, kTid13, kCustom };
enum class Category { kCompression, kNoise, kCommunication, kBlur, kColor, kGlobal, kLocal };

inline constexpr std::array<Database, 4> kDatabases = {Database::kLive, Database::kMulti, Database::kTid13,
                                                       Database::kCustom};
inline constexpr std::array<Category, 7> kCategories = {
    Category::kCompression, Category::kNoise,  Category::kCommunication, Category::kBlur,
    Category::kColor,       Category::kGlobal, Category::kLocal};

const char* to_string(Database db) noexcept;
const char* to_string(Category c) noexcept;
std::optional<Database> parse_database(std::string_view name);
std::optional<Category> parse_category(std::string_view name);

// Distortion code -> category for one database. Codes:
//   LIVE:   jp2k, jpeg, wn, gblur, fastfading
//   MULTI:  part1 (blur + JPEG), part2 (blur + noise)
//   TID13:  1..24 (leading zeros allowed)
//   CUSTOM: the category names themselves
std::optional<Category> categorize(Database db, std::string_view code);
std::map<std::string, Category> category_table(Database db);

struct ManifestRow {
  std::string ref_path;
  std::string dist_path;
  double mos;  // higher is better
  std::string distortion_code;
  Category category;
};

struct DatasetManifest {
  Database database;
  std::vector<ManifestRow> rows;
  std::map<std::string, Category> category_map;
};

// CSV with header containing ref,dist,mos,distortion (extra columns are
// ignored). Relative image paths resolve against the manifest directory.
DatasetManifest load_manifest(const std::filesystem::path& path, Database db);
DatasetManifest parse_manifest(std::string_view csv, Database db, const std::filesystem::path& base_dir = {});

std::map<Category, std::size_t> category_counts(const DatasetManifest& manifest);

// Published per-category image counts of the full databases.
std::optional<std::size_t> reference_count(Database db, Category c);
std::optional<std::size_t> reference_total(Database db);
// Cells whose published count assumes a distortion type sits in two
// categories; a one-category-per-code table cannot reproduce them.
bool reference_count_double_counted(Database db, Category c);

// Average ranks on ties; 1-based.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of the average-rank vectors.
double spearman(std::span<const double> x, std::span<const double> y);

struct SignificanceOptions {
  double critical_z = 1.96;  // two-sided 95 %
};

// Fisher-z comparison of two correlations on a shared sample of size n.
double significance_statistic(double srcc_a, double srcc_b, std::size_t n);
bool significance(double srcc_a, double srcc_b, std::size_t n, const SignificanceOptions& opts = {});

struct BenchmarkRecord {
  std::string pair_id;
  Database database;
  Category category;
  double mos;
  std::map<Estimator, double> scores;
};

using EstimatorPair = std::pair<Estimator, Estimator>;  // baseline, assisted

// Group key: a category, or nullopt for the whole database.
using Group = std::optional<Category>;
std::string group_name(const Group& g);

struct CorrelationCell {
  double srcc;
  std::size_t n;
};

struct ChangeCell {
  double pct_change;  // NaN when the baseline SRCC is 0
  bool significant;
  bool tested;  // false when n < 4 or a correlation is exactly +-1
};

struct CorrelationReport {
  std::vector<EstimatorPair> pairs;
  std::map<Database, std::map<Group, std::map<Estimator, CorrelationCell>>> srcc;
  std::map<EstimatorPair, std::map<Database, std::map<Group, ChangeCell>>> changes;
  // Per pair and group, pct_change averaged over databases weighted by n.
  std::map<EstimatorPair, std::map<Group, double>> weighted_change;

  bool operator==(const CorrelationReport&) const;
};

CorrelationReport category_report(std::span<const BenchmarkRecord> records, std::span<const EstimatorPair> pairs,
                                  const SignificanceOptions& opts = {});
CorrelationReport category_report(std::span<const BenchmarkRecord> records, Estimator baseline, Estimator assisted,
                                  const SignificanceOptions& opts = {});

std::vector<EstimatorPair> default_pairs();

std::string report_to_json(const CorrelationReport& report);
CorrelationReport report_from_json(std::string_view json);
// Flat table: one row per (group, pair) with per-database changes and a
// significance flag string such as "(--1)" in LIVE, MULTI, TID13 order.
std::string report_to_csv(const CorrelationReport& report);

}  // namespace bless

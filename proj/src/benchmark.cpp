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

#include "bless/benchmark.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "bless/codec.hpp"
#include "bless/error.hpp"

namespace bless {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line = line.substr(comma + 1);
  }
  return out;
}

std::string strip_leading_zeros(std::string_view s) {
  const auto nz = s.find_first_not_of('0');
  return nz == std::string_view::npos ? std::string("0") : std::string(s.substr(nz));
}

}  // namespace

const char* to_string(Database db) noexcept {
  switch (db) {
    case Database::kLive: return "LIVE";
    case Database::kMulti: return "MULTI";
    case Database::kTid13: return "TID13";
    case Database::kCustom: return "CUSTOM";
  }
  return "?";
}

const char* to_string(Category c) noexcept {
  switch (c) {
    case Category::kCompression: return "Compression";
    case Category::kNoise: return "Noise";
    case Category::kCommunication: return "Communication";
    case Category::kBlur: return "Blur";
    case Category::kColor: return "Color";
    case Category::kGlobal: return "Global";
    case Category::kLocal: return "Local";
  }
  return "?";
}

std::optional<Database> parse_database(std::string_view name) {
  const std::string n = lower(trim(name));
  for (Database db : kDatabases)
    if (n == lower(to_string(db))) return db;
  if (n == "tid2013") return Database::kTid13;
  return std::nullopt;
}

std::optional<Category> parse_category(std::string_view name) {
  const std::string n = lower(trim(name));
  for (Category c : kCategories)
    if (n == lower(to_string(c))) return c;
  return std::nullopt;
}

std::map<std::string, Category> category_table(Database db) {
  using C = Category;
  switch (db) {
    case Database::kLive:
      return {{"jp2k", C::kCompression},
              {"jpeg", C::kCompression},
              {"wn", C::kNoise},
              {"fastfading", C::kCommunication},
              {"gblur", C::kBlur}};
    case Database::kMulti:
      // part1 is blur followed by JPEG, part2 blur followed by noise; each
      // code is filed under its final stage.
      return {{"part1", C::kCompression}, {"part2", C::kNoise}};
    case Database::kTid13:
      return {
          {"1", C::kNoise},           // additive Gaussian noise
          {"2", C::kNoise},           // noise in color components
          {"3", C::kNoise},           // spatially correlated noise
          {"4", C::kNoise},           // masked noise
          {"5", C::kNoise},           // high frequency noise
          {"6", C::kNoise},           // impulse noise
          {"7", C::kNoise},           // quantization noise
          {"8", C::kBlur},            // Gaussian blur
          {"9", C::kNoise},           // image denoising
          {"10", C::kCompression},    // JPEG
          {"11", C::kCompression},    // JPEG2000
          {"12", C::kCommunication},  // JPEG transmission errors
          {"13", C::kCommunication},  // JPEG2000 transmission errors
          {"14", C::kLocal},          // non-eccentricity pattern noise
          {"15", C::kLocal},          // local block-wise distortions
          {"16", C::kGlobal},         // mean shift
          {"17", C::kGlobal},         // contrast change
          {"18", C::kColor},          // color saturation change
          {"19", C::kNoise},          // multiplicative Gaussian noise
          {"20", C::kNoise},          // comfort noise
          {"21", C::kNoise},          // lossy compression of noisy images
          {"22", C::kColor},          // color quantization with dither
          {"23", C::kColor},          // chromatic aberrations
          {"24", C::kBlur},           // sparse sampling and reconstruction
      };
    case Database::kCustom: {
      std::map<std::string, Category> t;
      for (Category c : kCategories) t.emplace(lower(to_string(c)), c);
      return t;
    }
  }
  return {};
}

std::optional<Category> categorize(Database db, std::string_view code) {
  std::string key = lower(trim(code));
  if (db == Database::kTid13) key = strip_leading_zeros(key);
  const auto table = category_table(db);
  const auto it = table.find(key);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

DatasetManifest parse_manifest(std::string_view csv, Database db, const std::filesystem::path& base_dir) {
  std::vector<std::string_view> lines;
  while (!csv.empty()) {
    const auto eol = csv.find('\n');
    const std::string_view line = csv.substr(0, eol);
    if (!trim(line).empty()) lines.push_back(line);
    csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
  }
  if (lines.empty()) throw Error(Errc::kMissingColumn, "manifest is empty");

  std::string_view header = lines.front();
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
  const auto names = split_commas(header);
  auto column = [&](std::string_view name, bool required) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (lower(names[i]) == name) return i;
    if (required) throw Error(Errc::kMissingColumn, "manifest lacks column '" + std::string(name) + "'");
    return std::nullopt;
  };
  const std::size_t c_ref = *column("ref", true);
  const std::size_t c_dist = *column("dist", true);
  const std::size_t c_mos = *column("mos", true);
  const std::size_t c_code = *column("distortion", true);
  const std::size_t width = std::max({c_ref, c_dist, c_mos, c_code}) + 1;

  DatasetManifest m{db, {}, category_table(db)};
  auto resolve = [&](std::string_view p) {
    std::filesystem::path path{std::string(p)};
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    return path.lexically_normal().string();
  };
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_commas(lines[i]);
    const std::string where = "manifest line " + std::to_string(i + 1);
    if (cells.size() < width) throw Error(Errc::kMissingColumn, where + " has too few fields");
    double mos = 0.0;
    try {
      std::size_t used = 0;
      mos = std::stod(std::string(cells[c_mos]), &used);
      if (used != cells[c_mos].size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw Error(Errc::kInvalidArgument, where + ": bad mos '" + std::string(cells[c_mos]) + "'");
    }
    const auto cat = categorize(db, cells[c_code]);
    if (!cat)
      throw Error(Errc::kUnknownDistortionCode,
                  where + ": '" + std::string(cells[c_code]) + "' is not a " + to_string(db) + " code");
    m.rows.push_back({resolve(cells[c_ref]), resolve(cells[c_dist]), mos, std::string(cells[c_code]), *cat});
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path, Database db) {
  const Bytes bytes = read_file(path);
  return parse_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()), db,
                        path.parent_path());
}

std::map<Category, std::size_t> category_counts(const DatasetManifest& manifest) {
  std::map<Category, std::size_t> counts;
  for (const auto& row : manifest.rows) ++counts[row.category];
  return counts;
}

std::optional<std::size_t> reference_count(Database db, Category c) {
  using C = Category;
  static const std::map<std::pair<Database, Category>, std::size_t> table = {
      {{Database::kLive, C::kCompression}, 460},   {{Database::kLive, C::kNoise}, 174},
      {{Database::kLive, C::kCommunication}, 174}, {{Database::kLive, C::kBlur}, 174},
      {{Database::kMulti, C::kCompression}, 225},  {{Database::kMulti, C::kNoise}, 225},
      {{Database::kMulti, C::kBlur}, 450},         {{Database::kTid13, C::kCompression}, 375},
      {{Database::kTid13, C::kNoise}, 1375},       {{Database::kTid13, C::kCommunication}, 250},
      {{Database::kTid13, C::kBlur}, 250},         {{Database::kTid13, C::kColor}, 375},
      {{Database::kTid13, C::kGlobal}, 250},       {{Database::kTid13, C::kLocal}, 250},
  };
  const auto it = table.find({db, c});
  if (it == table.end()) {
    if (db == Database::kCustom) return std::nullopt;
    return 0;
  }
  return it->second;
}

std::optional<std::size_t> reference_total(Database db) {
  switch (db) {
    case Database::kLive: return 982;
    case Database::kMulti: return 450;
    case Database::kTid13: return 3000;
    case Database::kCustom: return std::nullopt;
  }
  return std::nullopt;
}

bool reference_count_double_counted(Database db, Category c) {
  return (db == Database::kTid13 && c == Category::kCompression) ||
         (db == Database::kMulti && c == Category::kBlur);
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1 .. j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(Errc::kLengthMismatch, std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  const std::size_t n = x.size();
  if (n < 2) throw Error(Errc::kDegenerateInput, "spearman needs at least two samples");
  for (double v : x)
    if (!std::isfinite(v)) throw Error(Errc::kDegenerateInput, "non-finite value");
  for (double v : y)
    if (!std::isfinite(v)) throw Error(Errc::kDegenerateInput, "non-finite value");

  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mean = 0.5 * static_cast<double>(n + 1);  // both rank vectors share it
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean, dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(Errc::kDegenerateInput, "all values equal");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double significance_statistic(double srcc_a, double srcc_b, std::size_t n) {
  if (n < 4) throw Error(Errc::kSampleTooSmall, "n = " + std::to_string(n));
  if (!(std::abs(srcc_a) < 1.0) || !(std::abs(srcc_b) < 1.0))
    throw Error(Errc::kPerfectCorrelation, "|r| must be below 1");
  return std::abs(std::atanh(srcc_a) - std::atanh(srcc_b)) / std::sqrt(2.0 / static_cast<double>(n - 3));
}

bool significance(double srcc_a, double srcc_b, std::size_t n, const SignificanceOptions& opts) {
  return significance_statistic(srcc_a, srcc_b, n) > opts.critical_z;
}

std::string group_name(const Group& g) { return g ? to_string(*g) : "All"; }

bool CorrelationReport::operator==(const CorrelationReport& o) const {
  auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
  if (pairs != o.pairs || srcc.size() != o.srcc.size() || changes.size() != o.changes.size() ||
      weighted_change.size() != o.weighted_change.size())
    return false;
  for (const auto& [db, groups] : srcc) {
    const auto it = o.srcc.find(db);
    if (it == o.srcc.end() || it->second.size() != groups.size()) return false;
    for (const auto& [g, cells] : groups) {
      const auto jt = it->second.find(g);
      if (jt == it->second.end() || jt->second.size() != cells.size()) return false;
      for (const auto& [e, cell] : cells) {
        const auto kt = jt->second.find(e);
        if (kt == jt->second.end() || !same(kt->second.srcc, cell.srcc) || kt->second.n != cell.n) return false;
      }
    }
  }
  for (const auto& [p, dbs] : changes) {
    const auto it = o.changes.find(p);
    if (it == o.changes.end() || it->second.size() != dbs.size()) return false;
    for (const auto& [db, groups] : dbs) {
      const auto jt = it->second.find(db);
      if (jt == it->second.end() || jt->second.size() != groups.size()) return false;
      for (const auto& [g, c] : groups) {
        const auto kt = jt->second.find(g);
        if (kt == jt->second.end() || !same(kt->second.pct_change, c.pct_change) ||
            kt->second.significant != c.significant || kt->second.tested != c.tested)
          return false;
      }
    }
  }
  for (const auto& [p, groups] : weighted_change) {
    const auto it = o.weighted_change.find(p);
    if (it == o.weighted_change.end() || it->second.size() != groups.size()) return false;
    for (const auto& [g, v] : groups) {
      const auto jt = it->second.find(g);
      if (jt == it->second.end() || !same(jt->second, v)) return false;
    }
  }
  return true;
}

std::vector<EstimatorPair> default_pairs() {
  return {{Estimator::kFsim, Estimator::kBlessFsim},
          {Estimator::kFsimc, Estimator::kBlessFsimc},
          {Estimator::kSrsim, Estimator::kBlessSrsim}};
}

CorrelationReport category_report(std::span<const BenchmarkRecord> records, std::span<const EstimatorPair> pairs,
                                  const SignificanceOptions& opts) {
  if (records.empty()) throw Error(Errc::kEmptyCategory, "no benchmark records");
  CorrelationReport report;
  report.pairs.assign(pairs.begin(), pairs.end());

  std::vector<Estimator> estimators;
  for (const auto& [b, a] : pairs) {
    for (Estimator e : {b, a})
      if (std::find(estimators.begin(), estimators.end(), e) == estimators.end()) estimators.push_back(e);
  }

  std::map<Database, std::map<Group, std::vector<const BenchmarkRecord*>>> groups;
  for (const auto& r : records) {
    for (Estimator e : estimators)
      if (!r.scores.contains(e))
        throw Error(Errc::kInvalidArgument, "record " + r.pair_id + " lacks a " + to_string(e) + " score");
    groups[r.database][std::nullopt].push_back(&r);
    groups[r.database][r.category].push_back(&r);
  }

  for (const auto& [db, by_group] : groups) {
    for (const auto& [g, members] : by_group) {
      const std::size_t n = members.size();
      if (n < 2)
        throw Error(Errc::kEmptyCategory,
                    std::string(to_string(db)) + "/" + group_name(g) + " has fewer than two records");
      std::vector<double> mos(n), score(n);
      for (std::size_t i = 0; i < n; ++i) mos[i] = members[i]->mos;
      for (Estimator e : estimators) {
        for (std::size_t i = 0; i < n; ++i) score[i] = members[i]->scores.at(e);
        report.srcc[db][g][e] = {spearman(score, mos), n};
      }
    }
  }

  for (const auto& pair : pairs) {
    auto& per_db = report.changes[pair];
    std::map<Group, std::pair<double, double>> acc;  // weighted sum, weight
    for (const auto& [db, by_group] : report.srcc) {
      for (const auto& [g, cells] : by_group) {
        const auto& base = cells.at(pair.first);
        const auto& assisted = cells.at(pair.second);
        ChangeCell c{};
        c.pct_change = base.srcc == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                        : 100.0 * (assisted.srcc - base.srcc) / std::abs(base.srcc);
        c.tested = base.n >= 4 && std::abs(base.srcc) < 1.0 && std::abs(assisted.srcc) < 1.0;
        c.significant = c.tested && significance(assisted.srcc, base.srcc, base.n, opts);
        per_db[db][g] = c;
        if (!std::isnan(c.pct_change)) {
          auto& [sum, weight] = acc[g];
          sum += static_cast<double>(base.n) * c.pct_change;
          weight += static_cast<double>(base.n);
        }
      }
    }
    auto& wc = report.weighted_change[pair];
    for (const auto& [db, by_group] : report.srcc)
      for (const auto& [g, cells] : by_group) {
        const auto it = acc.find(g);
        wc[g] = it == acc.end() ? std::numeric_limits<double>::quiet_NaN() : it->second.first / it->second.second;
      }
  }
  return report;
}

CorrelationReport category_report(std::span<const BenchmarkRecord> records, Estimator baseline, Estimator assisted,
                                  const SignificanceOptions& opts) {
  const EstimatorPair p{baseline, assisted};
  return category_report(records, std::span<const EstimatorPair>(&p, 1), opts);
}

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); }

double number_from(const ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string pair_key(const EstimatorPair& p) {
  return std::string(to_string(p.first)) + "->" + to_string(p.second);
}

Group group_from(const std::string& name) {
  if (name == "All") return std::nullopt;
  const auto c = parse_category(name);
  if (!c) throw Error(Errc::kInvalidArgument, "unknown category '" + name + "' in report");
  return c;
}

Estimator estimator_from(const std::string& name) {
  const auto e = parse_estimator(name);
  if (!e) throw Error(Errc::kInvalidArgument, "unknown estimator '" + name + "' in report");
  return *e;
}

Database database_from(const std::string& name) {
  const auto db = parse_database(name);
  if (!db) throw Error(Errc::kInvalidArgument, "unknown database '" + name + "' in report");
  return *db;
}

EstimatorPair pair_from(const std::string& key) {
  const auto arrow = key.find("->");
  if (arrow == std::string::npos) throw Error(Errc::kInvalidArgument, "bad pair key '" + key + "'");
  return {estimator_from(key.substr(0, arrow)), estimator_from(key.substr(arrow + 2))};
}

}  // namespace

std::string report_to_json(const CorrelationReport& report) {
  ordered_json root;
  ordered_json pairs = ordered_json::array();
  for (const auto& p : report.pairs) pairs.push_back({{"baseline", to_string(p.first)}, {"assisted", to_string(p.second)}});
  root["pairs"] = pairs;

  ordered_json srcc = ordered_json::object();
  for (const auto& [db, groups] : report.srcc)
    for (const auto& [g, cells] : groups)
      for (const auto& [e, cell] : cells)
        srcc[to_string(db)][group_name(g)][to_string(e)] = {{"srcc", number(cell.srcc)}, {"n", cell.n}};
  root["srcc"] = srcc;

  ordered_json changes = ordered_json::object();
  for (const auto& [p, dbs] : report.changes)
    for (const auto& [db, groups] : dbs)
      for (const auto& [g, c] : groups)
        changes[pair_key(p)][to_string(db)][group_name(g)] = {
            {"pct_change", number(c.pct_change)}, {"significant", c.significant ? 1 : 0}, {"tested", c.tested}};
  root["changes"] = changes;

  ordered_json weighted = ordered_json::object();
  for (const auto& [p, groups] : report.weighted_change)
    for (const auto& [g, v] : groups) weighted[pair_key(p)][group_name(g)] = number(v);
  root["weighted_change"] = weighted;
  return root.dump(2) + "\n";
}

CorrelationReport report_from_json(std::string_view text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw Error(Errc::kInvalidArgument, std::string("report JSON: ") + e.what());
  }
  CorrelationReport r;
  try {
    for (const auto& p : root.at("pairs"))
      r.pairs.emplace_back(estimator_from(p.at("baseline").get<std::string>()),
                           estimator_from(p.at("assisted").get<std::string>()));
    for (const auto& [db, groups] : root.at("srcc").items())
      for (const auto& [g, cells] : groups.items())
        for (const auto& [e, cell] : cells.items())
          r.srcc[database_from(db)][group_from(g)][estimator_from(e)] = {number_from(cell.at("srcc")),
                                                                         cell.at("n").get<std::size_t>()};
    for (const auto& [p, dbs] : root.at("changes").items())
      for (const auto& [db, groups] : dbs.items())
        for (const auto& [g, c] : groups.items())
          r.changes[pair_from(p)][database_from(db)][group_from(g)] = {
              number_from(c.at("pct_change")), c.at("significant").get<int>() != 0, c.at("tested").get<bool>()};
    for (const auto& [p, groups] : root.at("weighted_change").items())
      for (const auto& [g, v] : groups.items()) r.weighted_change[pair_from(p)][group_from(g)] = number_from(v);
  } catch (const ordered_json::exception& e) {
    throw Error(Errc::kInvalidArgument, std::string("report JSON: ") + e.what());
  }
  return r;
}

std::string report_to_csv(const CorrelationReport& report) {
  std::vector<Database> dbs;
  for (const auto& [db, groups] : report.srcc) dbs.push_back(db);
  std::set<Group> all_groups;
  for (const auto& [db, groups] : report.srcc)
    for (const auto& [g, cells] : groups) all_groups.insert(g);

  auto fmt = [](double v) {
    if (std::isnan(v)) return std::string();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream out;
  out << "category,baseline,assisted";
  for (Database db : dbs) out << ",srcc_base_" << to_string(db) << ",srcc_assisted_" << to_string(db);
  for (Database db : dbs) out << ",pct_" << to_string(db);
  out << ",pct_weighted,significance\n";

  for (const Group& g : all_groups) {
    for (const auto& p : report.pairs) {
      out << group_name(g) << ',' << to_string(p.first) << ',' << to_string(p.second);
      for (Database db : dbs) {
        const auto& groups = report.srcc.at(db);
        const auto it = groups.find(g);
        if (it == groups.end()) {
          out << ",,";
          continue;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, ",%.4f,%.4f", it->second.at(p.first).srcc, it->second.at(p.second).srcc);
        out << buf;
      }
      std::string flags = "(";
      for (Database db : dbs) {
        const auto& groups = report.changes.at(p).at(db);
        const auto it = groups.find(g);
        out << ',' << (it == groups.end() ? std::string() : fmt(it->second.pct_change));
        flags += it == groups.end() || !it->second.tested ? '-' : (it->second.significant ? '1' : '0');
      }
      flags += ')';
      out << ',' << fmt(report.weighted_change.at(p).at(g)) << ',' << flags << '\n';
    }
  }
  return out.str();
}

}  // namespace bless

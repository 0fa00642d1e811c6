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

#include "bless/config.hpp"

#include <charconv>
#include <string>

#include "bless/codec.hpp"
#include "bless/error.hpp"

namespace bless {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(std::size_t line, std::string_view key, std::string_view why) {
  throw Error(Errc::kConfigError, "line " + std::to_string(line) + " (" + std::string(key) + "): " + std::string(why));
}

double to_double(std::size_t line, std::string_view key, std::string_view v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(std::string(v), &used);
    if (used != v.size()) bad(line, key, "trailing characters");
    return d;
  } catch (const std::logic_error&) {
    bad(line, key, "not a number: " + std::string(v));
  }
}

std::size_t to_size(std::size_t line, std::string_view key, std::string_view v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad(line, key, "not a non-negative integer");
  return out;
}

bool to_bool(std::size_t line, std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(line, key, "expected true/false");
}

GradientOperator to_gradient(std::size_t line, std::string_view key, std::string_view v) {
  if (v == "scharr") return GradientOperator::kScharr;
  if (v == "sobel") return GradientOperator::kSobel;
  bad(line, key, "expected scharr or sobel");
}

bool set_ecsf(EcsfParams& p, std::string_view field, std::size_t line, std::string_view key, std::string_view v) {
  const double d = to_double(line, key, v);
  if (field == "peak_scale") p.peak_scale = d;
  else if (field == "spread") p.spread = d;
  else if (field == "gain") p.gain = d;
  else if (field == "floor_gain") p.floor_gain = d;
  else return false;
  return true;
}

}  // namespace

Config parse_config(std::string_view text, Config cfg) {
  MetricConfig& m = cfg.metric;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad(line_no, line, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view v = trim(line.substr(eq + 1));

    if (key == "gamma") m.tau.gamma = to_double(line_no, key, v);
    else if (key == "scales") m.tau.scales = v == "auto" ? std::nullopt : std::optional(to_size(line_no, key, v));
    else if (key == "grouplet_depth")
      m.tau.grouplet_depth = v == "auto" ? std::nullopt : std::optional(to_size(line_no, key, v));
    else if (key == "surround_factor") m.tau.surround_factor = to_double(line_no, key, v);
    else if (key == "level_reduction") {
      if (v == "sum") m.tau.reduction = LevelReduction::kSum;
      else if (v == "mean") m.tau.reduction = LevelReduction::kMean;
      else bad(line_no, key, "expected sum or mean");
    } else if (key == "downsample") m.downsample = to_bool(line_no, key, v);
    else if (key == "luma") {
      if (v == "y") m.luma = LumaSource::kY;
      else if (v == "i3") m.luma = LumaSource::kI3;
      else bad(line_no, key, "expected y or i3");
    } else if (key == "gradient.fsim") m.fsim_gradient = to_gradient(line_no, key, v);
    else if (key == "gradient.srsim") m.srsim_gradient = to_gradient(line_no, key, v);
    else if (key == "chroma_constant") m.chroma_constant = to_double(line_no, key, v);
    else if (key == "ecsf.min_floor") m.tau.ecsf.min_floor = to_double(line_no, key, v);
    else if (key.starts_with("ecsf.")) {
      const std::string_view rest = key.substr(5);
      const auto dot = rest.find('.');
      const std::string_view cls = rest.substr(0, dot);
      const std::string_view field = dot == std::string_view::npos ? std::string_view{} : rest.substr(dot + 1);
      EcsfParams* p = nullptr;
      if (cls == "achromatic") p = &m.tau.ecsf.achromatic;
      else if (cls == "chromatic") p = &m.tau.ecsf.chromatic;
      else throw Error(Errc::kUnknownChannelClass, "line " + std::to_string(line_no) + ": " + std::string(cls));
      if (!set_ecsf(*p, field, line_no, key, v)) bad(line_no, key, "unknown ECSF field");
    } else if (key == "pc.scales") m.pc.scales = to_size(line_no, key, v);
    else if (key == "pc.orientations") m.pc.orientations = to_size(line_no, key, v);
    else if (key == "pc.min_wavelength") m.pc.min_wavelength = to_double(line_no, key, v);
    else if (key == "pc.mult") m.pc.mult = to_double(line_no, key, v);
    else if (key == "pc.sigma_on_f") m.pc.sigma_on_f = to_double(line_no, key, v);
    else if (key == "pc.k") m.pc.k = to_double(line_no, key, v);
    else if (key == "sr.analysis_size") m.sr.analysis_size = to_size(line_no, key, v);
    else if (key == "sr.box") m.sr.box = to_size(line_no, key, v);
    else if (key == "sr.sigma") m.sr.sigma = to_double(line_no, key, v);
    else if (key == "significance.critical_z") cfg.significance.critical_z = to_double(line_no, key, v);
    else bad(line_no, key, "unknown key");
  }

  if (!(m.tau.gamma > 0.0)) throw Error(Errc::kNonPositiveGamma, "gamma must be positive");
  if (!(m.tau.surround_factor > 0.0)) throw Error(Errc::kConfigError, "surround_factor must be positive");
  if (!(m.chroma_constant > 0.0)) throw Error(Errc::kConfigError, "chroma_constant must be positive");
  if (m.pc.scales == 0 || m.pc.orientations == 0) throw Error(Errc::kConfigError, "pc needs scales/orientations");
  m.tau.ecsf.validate();
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  const Bytes bytes = read_file(path);
  return parse_config(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace bless

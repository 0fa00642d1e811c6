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

#include <filesystem>
#include <string_view>

#include "bless/benchmark.hpp"
#include "bless/estimators.hpp"

namespace bless {

struct Config {
  MetricConfig metric;
  SignificanceOptions significance;
};

// Plain `key = value` lines; '#' starts a comment. Keys:
//   gamma, scales, grouplet_depth (integer or "auto"), surround_factor,
//   level_reduction (sum|mean), downsample (true|false), luma (y|i3),
//   gradient.fsim / gradient.srsim (scharr|sobel), chroma_constant,
//   ecsf.<achromatic|chromatic>.<peak_scale|spread|gain|floor_gain>,
//   ecsf.min_floor, pc.<scales|orientations|min_wavelength|mult|
//   sigma_on_f|k>, sr.<analysis_size|box|sigma>, significance.critical_z
Config parse_config(std::string_view text, Config base = {});
Config load_config(const std::filesystem::path& path);

}  // namespace bless

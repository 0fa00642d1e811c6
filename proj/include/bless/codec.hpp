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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "bless/image.hpp"

namespace bless {

using Bytes = std::vector<std::uint8_t>;

// PNG (8/16-bit, any colour type), BMP (8-bit palette, 24, 32-bit
// uncompressed) and PNM (P2/P3/P5/P6). Result is RGB-sRGB scaled to [0,1];
// gray sources are replicated into three planes.
PlanarImage decode_image(std::span<const std::uint8_t> bytes);
PlanarImage decode_image_file(const std::filesystem::path& path);

// Encoders clamp to [0,1] and quantize with round-half-away.
Bytes encode_png(const PlanarImage& img);  // RGB or Gray, 8-bit
Bytes encode_png(const Plane& gray);       // 8-bit gray
Bytes encode_pgm(const Plane& gray, int bit_depth);  // P5, 8 or 16 bit
Bytes encode_ppm(const PlanarImage& rgb);            // P6, 8 bit

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace bless

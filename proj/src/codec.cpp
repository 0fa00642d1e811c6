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

#include "bless/codec.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "bless/error.hpp"

namespace bless {

namespace {

PlanarImage make_rgb(std::size_t w, std::size_t h, const std::vector<double>& interleaved, std::size_t channels) {
  std::vector<Plane> planes(3, Plane(w, h));
  for (std::size_t i = 0; i < w * h; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      planes[c].samples()[i] = interleaved[i * channels + (channels == 1 ? 0 : c)];
    }
  }
  return PlanarImage(ColorSpace::kRgbSrgb, std::move(planes));
}

std::uint32_t quantize(double v, std::uint32_t max_value) {
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint32_t>(std::lround(c * max_value));
}

// ---- PNG -------------------------------------------------------------

PlanarImage decode_png(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(Errc::kCorruptStream, std::string("png: ") + image.message);
  }
  const bool wide = (image.format & PNG_FORMAT_FLAG_LINEAR) != 0;
  image.format = wide ? PNG_FORMAT_LINEAR_RGB : PNG_FORMAT_RGB;
  const std::size_t w = image.width;
  const std::size_t h = image.height;
  const std::size_t count = w * h * 3;

  std::vector<double> samples(count);
  if (wide) {
    std::vector<png_uint_16> buf(count, 0);
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
      png_image_free(&image);
      throw Error(Errc::kCorruptStream, std::string("png: ") + image.message);
    }
    for (std::size_t i = 0; i < count; ++i) samples[i] = buf[i] / 65535.0;
  } else {
    std::vector<png_byte> buf(count, 0);
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
      png_image_free(&image);
      throw Error(Errc::kCorruptStream, std::string("png: ") + image.message);
    }
    for (std::size_t i = 0; i < count; ++i) samples[i] = buf[i] / 255.0;
  }
  return make_rgb(w, h, samples, 3);
}

Bytes write_png(std::size_t w, std::size_t h, std::uint32_t format, const std::vector<png_byte>& buf) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, buf.data(), 0, nullptr)) {
    throw Error(Errc::kIoError, std::string("png encode: ") + image.message);
  }
  Bytes out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, buf.data(), 0, nullptr)) {
    throw Error(Errc::kIoError, std::string("png encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

// ---- BMP -------------------------------------------------------------

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  if (at + 4 > b.size()) throw Error(Errc::kCorruptStream, "bmp: truncated header");
  return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
         static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  if (at + 2 > b.size()) throw Error(Errc::kCorruptStream, "bmp: truncated header");
  return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

PlanarImage decode_bmp(std::span<const std::uint8_t> b) {
  const std::uint32_t data_offset = le32(b, 10);
  const std::uint32_t header_size = le32(b, 14);
  if (header_size < 40) throw Error(Errc::kUnsupportedFormat, "bmp: only BITMAPINFOHEADER and later");
  const auto raw_w = static_cast<std::int32_t>(le32(b, 18));
  const auto raw_h = static_cast<std::int32_t>(le32(b, 22));
  const std::uint16_t bpp = le16(b, 28);
  const std::uint32_t compression = le32(b, 30);
  std::uint32_t palette_size = le32(b, 46);

  if (raw_w <= 0 || raw_h == 0) throw Error(Errc::kCorruptStream, "bmp: bad dimensions");
  if (compression != 0 && !(compression == 3 && bpp == 32)) {
    throw Error(Errc::kUnsupportedFormat, "bmp: compressed bitmaps are not supported");
  }
  if (bpp != 8 && bpp != 24 && bpp != 32) {
    throw Error(Errc::kUnsupportedFormat, "bmp: unsupported bit depth " + std::to_string(bpp));
  }
  const bool top_down = raw_h < 0;
  const std::size_t w = static_cast<std::size_t>(raw_w);
  const std::size_t h = static_cast<std::size_t>(top_down ? -static_cast<std::int64_t>(raw_h) : raw_h);
  const std::size_t stride = ((w * bpp + 31) / 32) * 4;
  if (static_cast<std::size_t>(data_offset) + stride * h > b.size()) {
    throw Error(Errc::kCorruptStream, "bmp: pixel data truncated");
  }

  std::vector<std::array<std::uint8_t, 3>> palette;
  if (bpp == 8) {
    if (palette_size == 0) palette_size = 256;
    const std::size_t pal_at = 14 + header_size;
    if (pal_at + palette_size * 4 > b.size()) throw Error(Errc::kCorruptStream, "bmp: palette truncated");
    for (std::uint32_t i = 0; i < palette_size; ++i) {
      const std::size_t at = pal_at + i * 4;
      palette.push_back({b[at + 2], b[at + 1], b[at]});
    }
  }

  std::vector<double> samples(w * h * 3);
  for (std::size_t row = 0; row < h; ++row) {
    const std::size_t y = top_down ? row : h - 1 - row;
    const std::uint8_t* src = b.data() + data_offset + row * stride;
    for (std::size_t x = 0; x < w; ++x) {
      std::uint8_t r, g, bl;
      if (bpp == 8) {
        const std::uint8_t idx = src[x];
        if (idx >= palette.size()) throw Error(Errc::kCorruptStream, "bmp: palette index out of range");
        r = palette[idx][0];
        g = palette[idx][1];
        bl = palette[idx][2];
      } else {
        const std::size_t step = bpp / 8;
        bl = src[x * step];
        g = src[x * step + 1];
        r = src[x * step + 2];
      }
      double* dst = &samples[(y * w + x) * 3];
      dst[0] = r / 255.0;
      dst[1] = g / 255.0;
      dst[2] = bl / 255.0;
    }
  }
  return make_rgb(w, h, samples, 3);
}

// ---- PNM -------------------------------------------------------------

class PnmReader {
 public:
  explicit PnmReader(std::span<const std::uint8_t> b) : b_(b) {}

  std::uint32_t header_value() {
    skip_space_and_comments();
    if (pos_ >= b_.size() || !std::isdigit(b_[pos_])) throw Error(Errc::kCorruptStream, "pnm: bad header");
    std::uint64_t v = 0;
    while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
      v = v * 10 + static_cast<std::uint64_t>(b_[pos_++] - '0');
      if (v > 0xFFFFFFFFu) throw Error(Errc::kCorruptStream, "pnm: header value overflow");
    }
    return static_cast<std::uint32_t>(v);
  }

  // Exactly one whitespace byte separates the header from binary data.
  void end_header() {
    if (pos_ >= b_.size() || !std::isspace(b_[pos_])) throw Error(Errc::kCorruptStream, "pnm: bad header end");
    ++pos_;
  }

  std::uint32_t binary_value(bool wide) {
    const std::size_t need = wide ? 2 : 1;
    if (pos_ + need > b_.size()) throw Error(Errc::kCorruptStream, "pnm: pixel data truncated");
    std::uint32_t v = b_[pos_];
    if (wide) v = (v << 8) | b_[pos_ + 1];
    pos_ += need;
    return v;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (std::isspace(b_[pos_])) {
        ++pos_;
      } else if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

PlanarImage decode_pnm(std::span<const std::uint8_t> b) {
  const char kind = static_cast<char>(b[1]);
  const bool ascii = kind == '2' || kind == '3';
  const std::size_t channels = (kind == '3' || kind == '6') ? 3 : 1;
  PnmReader reader(b);
  reader.skip(2);
  const std::uint32_t w = reader.header_value();
  const std::uint32_t h = reader.header_value();
  const std::uint32_t maxval = reader.header_value();
  if (w == 0 || h == 0) throw Error(Errc::kCorruptStream, "pnm: zero dimension");
  if (maxval == 0 || maxval > 65535) throw Error(Errc::kCorruptStream, "pnm: bad maxval");
  if (!ascii) reader.end_header();
  const bool wide = maxval > 255;

  const std::size_t count = static_cast<std::size_t>(w) * h * channels;
  if (!ascii && count * (wide ? 2 : 1) > b.size()) throw Error(Errc::kCorruptStream, "pnm: pixel data truncated");
  std::vector<double> samples(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t v = ascii ? reader.header_value() : reader.binary_value(wide);
    if (v > maxval) throw Error(Errc::kCorruptStream, "pnm: sample exceeds maxval");
    samples[i] = static_cast<double>(v) / maxval;
  }
  return make_rgb(w, h, samples, channels);
}

Bytes pnm_header(const char* magic, std::size_t w, std::size_t h, std::uint32_t maxval) {
  const std::string header = std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n" +
                             std::to_string(maxval) + "\n";
  return Bytes(header.begin(), header.end());
}

}  // namespace

PlanarImage decode_image(std::span<const std::uint8_t> bytes) {
  static constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  if (bytes.size() >= 8 && std::equal(kPngMagic, kPngMagic + 8, bytes.begin())) return decode_png(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') return decode_bmp(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'P' && std::strchr("2356", bytes[1]) != nullptr && bytes[1] != 0) {
    return decode_pnm(bytes);
  }
  throw Error(Errc::kUnsupportedFormat, "unrecognized image signature");
}

PlanarImage decode_image_file(const std::filesystem::path& path) {
  const Bytes bytes = read_file(path);
  try {
    return decode_image(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

Bytes encode_png(const PlanarImage& img) {
  if (img.space() == ColorSpace::kGray) return encode_png(img.plane(0));
  if (img.space() != ColorSpace::kRgbSrgb && img.space() != ColorSpace::kRgbLinear) {
    throw Error(Errc::kInvalidArgument, "encode_png expects RGB or Gray");
  }
  const std::size_t n = img.width() * img.height();
  std::vector<png_byte> buf(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      buf[i * 3 + c] = static_cast<png_byte>(quantize(img.plane(c).samples()[i], 255));
    }
  }
  return write_png(img.width(), img.height(), PNG_FORMAT_RGB, buf);
}

Bytes encode_png(const Plane& gray) {
  if (gray.empty()) throw Error(Errc::kEmptyPlane, "encode_png on empty plane");
  std::vector<png_byte> buf(gray.size());
  for (std::size_t i = 0; i < gray.size(); ++i) buf[i] = static_cast<png_byte>(quantize(gray.samples()[i], 255));
  return write_png(gray.width(), gray.height(), PNG_FORMAT_GRAY, buf);
}

Bytes encode_pgm(const Plane& gray, int bit_depth) {
  if (gray.empty()) throw Error(Errc::kEmptyPlane, "encode_pgm on empty plane");
  if (bit_depth != 8 && bit_depth != 16) throw Error(Errc::kInvalidArgument, "pgm bit depth must be 8 or 16");
  const std::uint32_t maxval = bit_depth == 8 ? 255 : 65535;
  Bytes out = pnm_header("P5", gray.width(), gray.height(), maxval);
  for (double v : gray.samples()) {
    const std::uint32_t q = quantize(v, maxval);
    if (bit_depth == 16) out.push_back(static_cast<std::uint8_t>(q >> 8));
    out.push_back(static_cast<std::uint8_t>(q & 0xFF));
  }
  return out;
}

Bytes encode_ppm(const PlanarImage& rgb) {
  if (rgb.channels() != 3) throw Error(Errc::kInvalidArgument, "encode_ppm expects three planes");
  Bytes out = pnm_header("P6", rgb.width(), rgb.height(), 255);
  const std::size_t n = rgb.width() * rgb.height();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) out.push_back(static_cast<std::uint8_t>(quantize(rgb.plane(c).samples()[i], 255)));
  }
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kFileNotFound, path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

}  // namespace bless

// Copyright 2026 The semwm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEMWM_OVERLAY_IMAGE_H_
#define SEMWM_OVERLAY_IMAGE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace semwm::overlay {

struct Rgba {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  std::uint8_t a = 255;

  friend bool operator==(const Rgba&, const Rgba&) = default;
};

// 8-bit RGBA raster, row-major, no padding.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, Rgba fill = {});

  Rgba At(int x, int y) const;
  void Set(int x, int y, Rgba c);
  bool InBounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }

  friend bool operator==(const Image&, const Image&) = default;
};

// Decodes any PNG libpng understands into RGBA. Throws ParseError on
// undecodable input.
Image DecodePng(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> EncodePng(const Image& image);

}  // namespace semwm::overlay

#endif  // SEMWM_OVERLAY_IMAGE_H_

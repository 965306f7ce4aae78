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

#ifndef SEMWM_OVERLAY_OVERLAY_H_
#define SEMWM_OVERLAY_OVERLAY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "semwm/core/config.h"
#include "semwm/core/types.h"
#include "semwm/overlay/image.h"

namespace semwm::overlay {

// Marker appearance. Defaults are sized for ~1080 px wide phone screenshots.
struct OverlayStyle {
  Rgba marker_color{0, 0, 255, 255};
  int cross_arm_length = 40;
  int stroke_width = 6;
  int arrow_head_length = 30;
  double arrow_head_angle = 30.0;  // degrees, each side of the shaft

  // Throws PreconditionError unless all lengths and alpha are positive.
  void Validate() const;
};

// Reads [overlay] keys marker_color ("r,g,b[,a]"), cross_arm_length,
// stroke_width, arrow_head_length and arrow_head_angle over the defaults.
OverlayStyle StyleFromConfig(const Config& config);
// Parses "r,g,b" or "r,g,b,a" with components in [0, 255].
Rgba ParseColor(std::string_view text);

// Pixel-level renderers. Strokes are hard-edged: a pixel is painted iff its
// center lies within stroke_width / 2 of the segment, computed in exact
// integer arithmetic so output is identical on every platform. Parts of a
// marker that fall outside the image are clipped.
void DrawTapMarker(Image& image, Point center, const OverlayStyle& style);
void DrawSwipeArrow(Image& image, Point start, Point end,
                    const OverlayStyle& style);

// PNG in, PNG out. Points must lie inside the image; start != end for swipes.
std::vector<std::uint8_t> RenderTapMarker(std::span<const std::uint8_t> png,
                                          Point point,
                                          const OverlayStyle& style);
std::vector<std::uint8_t> RenderSwipeArrow(std::span<const std::uint8_t> png,
                                           Point start, Point end,
                                           const OverlayStyle& style);

struct AnnotatedScreenshot {
  std::vector<std::uint8_t> png;
  bool drawn = false;
};

// Draws the transition's low-level action onto its before screenshot: a cross
// for taps, an arrow for swipes. Other kinds return the input bytes unchanged
// with drawn = false.
AnnotatedScreenshot ComposeActionVisual(const Transition& t,
                                        std::span<const std::uint8_t> before_png,
                                        const OverlayStyle& style);

}  // namespace semwm::overlay

#endif  // SEMWM_OVERLAY_OVERLAY_H_

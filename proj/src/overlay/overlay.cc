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

#include "semwm/overlay/overlay.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "semwm/core/error.h"
#include "semwm/core/text.h"

namespace semwm::overlay {
namespace {

struct Box {
  int x0, y0, x1, y1;  // inclusive

  Box Union(const Box& o) const {
    return {std::min(x0, o.x0), std::min(y0, o.y0), std::max(x1, o.x1),
            std::max(y1, o.y1)};
  }
};

int HalfExtent(int stroke_width) { return (stroke_width + 1) / 2; }

// True iff pixel p is within stroke_width / 2 of segment ab:
// 4 * dist^2 <= w^2, evaluated without division.
bool OnStroke(Point p, Point a, Point b, int stroke_width) {
  const std::int64_t w2 =
      static_cast<std::int64_t>(stroke_width) * stroke_width;
  const std::int64_t vx = b.x - a.x, vy = b.y - a.y;
  const std::int64_t wx = p.x - a.x, wy = p.y - a.y;
  const std::int64_t len2 = vx * vx + vy * vy;
  const std::int64_t dot = wx * vx + wy * vy;
  if (len2 == 0 || dot <= 0) return 4 * (wx * wx + wy * wy) <= w2;
  if (dot >= len2) {
    const std::int64_t ex = p.x - b.x, ey = p.y - b.y;
    return 4 * (ex * ex + ey * ey) <= w2;
  }
  const std::int64_t cross = vx * wy - vy * wx;
  return 4 * cross * cross <= w2 * len2;
}

Box SegmentBox(Point a, Point b, int stroke_width) {
  const int r = HalfExtent(stroke_width);
  return {std::min(a.x, b.x) - r, std::min(a.y, b.y) - r,
          std::max(a.x, b.x) + r, std::max(a.y, b.y) + r};
}

std::int64_t Edge(Point a, Point b, Point p) {
  return static_cast<std::int64_t>(b.x - a.x) * (p.y - a.y) -
         static_cast<std::int64_t>(b.y - a.y) * (p.x - a.x);
}

bool InTriangle(Point p, Point a, Point b, Point c) {
  const std::int64_t e0 = Edge(a, b, p), e1 = Edge(b, c, p), e2 = Edge(c, a, p);
  return (e0 >= 0 && e1 >= 0 && e2 >= 0) || (e0 <= 0 && e1 <= 0 && e2 <= 0);
}

std::uint8_t Blend(std::uint8_t src, std::uint8_t dst, std::uint8_t alpha) {
  return static_cast<std::uint8_t>((src * alpha + dst * (255 - alpha) + 127) /
                                   255);
}

// Paints every in-bounds pixel of `box` for which covered(p) holds, each
// exactly once.
template <typename Covered>
void Paint(Image& image, const Box& box, Rgba color, Covered covered) {
  const int x0 = std::max(box.x0, 0), y0 = std::max(box.y0, 0);
  const int x1 = std::min(box.x1, image.width - 1);
  const int y1 = std::min(box.y1, image.height - 1);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (!covered(Point{x, y})) continue;
      if (color.a == 255) {
        image.Set(x, y, color);
      } else {
        const Rgba dst = image.At(x, y);
        image.Set(x, y,
                  Rgba{Blend(color.r, dst.r, color.a),
                       Blend(color.g, dst.g, color.a),
                       Blend(color.b, dst.b, color.a),
                       std::max(dst.a, color.a)});
      }
    }
  }
}

void RequireInside(const Image& image, Point p, const char* what) {
  if (!image.InBounds(p.x, p.y)) {
    throw PreconditionError(std::string(what) + " (" + std::to_string(p.x) +
                            ", " + std::to_string(p.y) +
                            ") is outside the " + std::to_string(image.width) +
                            "x" + std::to_string(image.height) + " image");
  }
}

}  // namespace

void OverlayStyle::Validate() const {
  if (cross_arm_length <= 0 || stroke_width <= 0 || arrow_head_length <= 0 ||
      arrow_head_angle <= 0.0 || arrow_head_angle >= 90.0) {
    throw PreconditionError(
        "overlay style: lengths must be > 0 and head angle in (0, 90)");
  }
  if (marker_color.a == 0) {
    throw PreconditionError("overlay style: marker alpha must be > 0");
  }
}

Rgba ParseColor(std::string_view text) {
  int parts[4] = {0, 0, 0, 255};
  int n = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string item(Trim(text.substr(start, end - start)));
    if (n == 4 || item.empty() ||
        item.find_first_not_of("0123456789") != std::string::npos ||
        item.size() > 3 || std::stoi(item) > 255) {
      throw ParseError("bad color '" + std::string(text) + "'");
    }
    parts[n++] = std::stoi(item);
    start = end + 1;
  }
  if (n < 3) throw ParseError("bad color '" + std::string(text) + "'");
  return Rgba{static_cast<std::uint8_t>(parts[0]),
              static_cast<std::uint8_t>(parts[1]),
              static_cast<std::uint8_t>(parts[2]),
              static_cast<std::uint8_t>(parts[3])};
}

OverlayStyle StyleFromConfig(const Config& config) {
  OverlayStyle s;
  if (auto color = config.Get("overlay", "marker_color")) {
    s.marker_color = ParseColor(*color);
  }
  s.cross_arm_length =
      config.GetInt("overlay", "cross_arm_length", s.cross_arm_length);
  s.stroke_width = config.GetInt("overlay", "stroke_width", s.stroke_width);
  s.arrow_head_length =
      config.GetInt("overlay", "arrow_head_length", s.arrow_head_length);
  s.arrow_head_angle =
      config.GetDouble("overlay", "arrow_head_angle", s.arrow_head_angle);
  s.Validate();
  return s;
}

void DrawTapMarker(Image& image, Point center, const OverlayStyle& style) {
  style.Validate();
  RequireInside(image, center, "tap point");
  const int arm = style.cross_arm_length;
  const Point left{center.x - arm, center.y}, right{center.x + arm, center.y};
  const Point top{center.x, center.y - arm}, bottom{center.x, center.y + arm};
  const Box box = SegmentBox(left, right, style.stroke_width)
                      .Union(SegmentBox(top, bottom, style.stroke_width));
  Paint(image, box, style.marker_color, [&](Point p) {
    return OnStroke(p, left, right, style.stroke_width) ||
           OnStroke(p, top, bottom, style.stroke_width);
  });
}

void DrawSwipeArrow(Image& image, Point start, Point end,
                    const OverlayStyle& style) {
  style.Validate();
  RequireInside(image, start, "swipe start");
  RequireInside(image, end, "swipe end");
  if (start == end) throw PreconditionError("swipe start equals end");

  const double dx = end.x - start.x, dy = end.y - start.y;
  const double length = std::hypot(dx, dy);
  // Unit vector pointing from the tip back along the shaft.
  const double bx = -dx / length, by = -dy / length;
  const double angle = style.arrow_head_angle * std::numbers::pi / 180.0;
  const double c = std::cos(angle), s = std::sin(angle);
  const double head = style.arrow_head_length;
  const auto barb = [&](double sign) {
    const double rx = c * bx - sign * s * by;
    const double ry = sign * s * bx + c * by;
    return Point{end.x + static_cast<int>(std::lround(head * rx)),
                 end.y + static_cast<int>(std::lround(head * ry))};
  };
  const Point left = barb(1.0), right = barb(-1.0);

  Box box = SegmentBox(start, end, style.stroke_width);
  for (Point v : {left, right}) {
    box = box.Union(SegmentBox(end, v, style.stroke_width));
  }
  Paint(image, box, style.marker_color, [&](Point p) {
    return OnStroke(p, start, end, style.stroke_width) ||
           InTriangle(p, end, left, right) ||
           OnStroke(p, end, left, style.stroke_width) ||
           OnStroke(p, end, right, style.stroke_width);
  });
}

std::vector<std::uint8_t> RenderTapMarker(std::span<const std::uint8_t> png,
                                          Point point,
                                          const OverlayStyle& style) {
  Image image = DecodePng(png);
  DrawTapMarker(image, point, style);
  return EncodePng(image);
}

std::vector<std::uint8_t> RenderSwipeArrow(std::span<const std::uint8_t> png,
                                           Point start, Point end,
                                           const OverlayStyle& style) {
  Image image = DecodePng(png);
  DrawSwipeArrow(image, start, end, style);
  return EncodePng(image);
}

AnnotatedScreenshot ComposeActionVisual(const Transition& t,
                                        std::span<const std::uint8_t> before_png,
                                        const OverlayStyle& style) {
  if (!t.low_action) {
    throw PreconditionError("transition " + t.id + " has no low-level action");
  }
  const LowLevelAction& action = *t.low_action;
  if (action.IsSpatial() &&
      (!action.point ||
       (action.kind == ActionKind::kSwipe && !action.end_point))) {
    throw PreconditionError("transition " + t.id + ": " + action.KindName() +
                            " action is missing coordinates");
  }
  if (action.kind == ActionKind::kTap) {
    return {RenderTapMarker(before_png, *action.point, style), true};
  }
  if (action.kind == ActionKind::kSwipe) {
    return {RenderSwipeArrow(before_png, *action.point, *action.end_point,
                             style),
            true};
  }
  return {std::vector<std::uint8_t>(before_png.begin(), before_png.end()),
          false};
}

}  // namespace semwm::overlay

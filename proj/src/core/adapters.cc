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

#include "semwm/core/adapters.h"

#include <cmath>

#include "semwm/core/assets.h"
#include "semwm/core/error.h"
#include "semwm/core/text.h"

namespace semwm {
namespace {

using nlohmann::json;

// AiTW action type codes.
constexpr int kAitwTypeText = 3;
constexpr int kAitwDualPoint = 4;
constexpr int kAitwPressBack = 5;
constexpr int kAitwPressHome = 6;
constexpr int kAitwPressEnter = 7;
constexpr int kAitwStatusComplete = 10;
constexpr int kAitwStatusImpossible = 11;

// Touch and lift closer than this (normalized units) count as a tap.
constexpr double kAitwTapDistance = 0.04;

Point ScaleYx(const json& yx, const Screenshot& shot) {
  if (!yx.is_array() || yx.size() != 2) {
    throw ParseError("expected a normalized [y, x] pair");
  }
  const double y = yx[0].get<double>();
  const double x = yx[1].get<double>();
  return Point{static_cast<int>(std::lround(x * (shot.width - 1))),
               static_cast<int>(std::lround(y * (shot.height - 1)))};
}

std::string StepId(const json& step, const char* episode_key,
                   const char* step_key) {
  const auto text = [](const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  return text(step.at(episode_key)) + "_" + text(step.at(step_key));
}

}  // namespace

const CategoryMap& CategoryMap::Default() {
  static const CategoryMap kDefault =
      FromJson(json::parse(assets::Get("category_map.json")));
  return kDefault;
}

CategoryMap CategoryMap::FromJson(const json& table) {
  CategoryMap map;
  for (const auto& [label, value] : table.items()) {
    auto category = CategoryFromString(value.get<std::string>());
    if (!category) {
      throw ParseError("category map: unknown category for '" + label + "'");
    }
    map.table_[ToLower(label)] = *category;
  }
  return map;
}

Category CategoryMap::Lookup(std::string_view label) const {
  auto it = table_.find(ToLower(Trim(label)));
  return it == table_.end() ? Category::kGeneral : it->second;
}

Transition TransitionFromAitwStep(const json& step, const Screenshot& before,
                                  const Screenshot& after,
                                  const CategoryMap& categories) {
  try {
    Transition t;
    t.id = "aitw_" + StepId(step, "episode_id", "step_id");
    t.before = before;
    t.after = after;
    t.goal = step.at("goal_info").get<std::string>();
    t.category = categories.Lookup(step.value("episode_category", ""));
    t.app = step.value("current_activity", "");
    t.source = Source::kAitw;

    LowLevelAction action;
    const int type = step.at("results_action_type").get<int>();
    switch (type) {
      case kAitwTypeText:
        action.kind = ActionKind::kInputText;
        action.text = step.at("results_type_action").get<std::string>();
        break;
      case kAitwDualPoint: {
        const json& touch = step.at("results_yx_touch");
        const json& lift = step.at("results_yx_lift");
        const double dy = touch[0].get<double>() - lift[0].get<double>();
        const double dx = touch[1].get<double>() - lift[1].get<double>();
        action.point = ScaleYx(touch, before);
        if (std::hypot(dx, dy) <= kAitwTapDistance) {
          action.kind = ActionKind::kTap;
        } else {
          action.kind = ActionKind::kSwipe;
          action.end_point = ScaleYx(lift, before);
        }
        break;
      }
      case kAitwPressBack: action.kind = ActionKind::kPressBack; break;
      case kAitwPressHome: action.kind = ActionKind::kPressHome; break;
      case kAitwPressEnter: action.kind = ActionKind::kPressEnter; break;
      case kAitwStatusComplete:
        action.kind = ActionKind::kStatusComplete;
        break;
      case kAitwStatusImpossible:
        action.kind = ActionKind::kStatusInfeasible;
        break;
      default:
        action.kind = ActionKind::kOther;
        action.other_kind = "aitw_" + std::to_string(type);
        break;
    }
    t.low_action = action;
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("AiTW step: ") + e.what());
  }
}

Transition TransitionFromAndroidControlStep(const json& step,
                                            const Screenshot& before,
                                            const Screenshot& after,
                                            const CategoryMap& categories) {
  try {
    Transition t;
    t.id = "ac_" + StepId(step, "episode_id", "step");
    t.before = before;
    t.after = after;
    t.goal = step.at("goal").get<std::string>();
    t.category = categories.Lookup(step.value("category", ""));
    t.source = Source::kAndroidControl;

    const json& raw = step.at("action");
    const std::string type = raw.at("action_type").get<std::string>();
    LowLevelAction action;
    if (raw.contains("x") && raw.contains("y")) {
      action.point = Point{raw.at("x").get<int>(), raw.at("y").get<int>()};
    }
    if (type == "click") {
      action.kind = ActionKind::kTap;
    } else if (type == "input_text") {
      action.kind = ActionKind::kInputText;
      action.text = raw.at("text").get<std::string>();
    } else if (type == "navigate_back") {
      action.kind = ActionKind::kPressBack;
    } else if (type == "navigate_home") {
      action.kind = ActionKind::kPressHome;
    } else if (type == "wait") {
      action.kind = ActionKind::kWait;
    } else if (type == "open_app") {
      action.kind = ActionKind::kOpenApp;
      action.text = raw.at("app_name").get<std::string>();
      t.app = *action.text;
    } else {
      // scroll and long_press have no counterpart in the core vocabulary.
      action.kind = ActionKind::kOther;
      action.other_kind = type;
      if (raw.contains("direction")) {
        action.text = raw.at("direction").get<std::string>();
      }
    }
    t.low_action = action;
    if (step.contains("step_instruction") &&
        !Trim(step.at("step_instruction").get<std::string>()).empty()) {
      t.high_action =
          HighLevelAction{step.at("step_instruction").get<std::string>()};
    }
    if (t.app.empty()) t.app = step.value("app", "");
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("AndroidControl step: ") + e.what());
  }
}

}  // namespace semwm

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

#include "semwm/core/types.h"

#include <array>
#include <utility>

#include "semwm/core/error.h"

namespace semwm {
namespace {

constexpr std::array<std::pair<ActionKind, std::string_view>, 10>
    kActionKindNames = {{
        {ActionKind::kTap, "tap"},
        {ActionKind::kSwipe, "swipe"},
        {ActionKind::kInputText, "input_text"},
        {ActionKind::kPressBack, "press_back"},
        {ActionKind::kPressHome, "press_home"},
        {ActionKind::kPressEnter, "press_enter"},
        {ActionKind::kWait, "wait"},
        {ActionKind::kOpenApp, "open_app"},
        {ActionKind::kStatusComplete, "status_complete"},
        {ActionKind::kStatusInfeasible, "status_infeasible"},
    }};

constexpr std::array<std::pair<Category, std::string_view>, 4>
    kCategoryNames = {{
        {Category::kGeneral, "general"},
        {Category::kGoogleApps, "google_apps"},
        {Category::kSystem, "system"},
        {Category::kWebShopping, "web_shopping"},
    }};

constexpr std::array<std::pair<Source, std::string_view>, 3> kSourceNames = {{
    {Source::kAitw, "aitw"},
    {Source::kAndroidControl, "android_control"},
    {Source::kSynthetic, "synthetic"},
}};

constexpr std::array<std::pair<Flag, std::string_view>, 3> kFlagNames = {{
    {Flag::kUnevaluated, "unevaluated"},
    {Flag::kPass, "pass"},
    {Flag::kFail, "fail"},
}};

template <typename Enum, std::size_t N>
std::string_view NameOf(
    const std::array<std::pair<Enum, std::string_view>, N>& table,
    Enum value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "unknown";
}

template <typename Enum, std::size_t N>
std::optional<Enum> ValueOf(
    const std::array<std::pair<Enum, std::string_view>, N>& table,
    std::string_view name) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  return std::nullopt;
}

std::string FormatPoint(const Point& p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

}  // namespace

std::string_view ToString(ActionKind kind) {
  if (kind == ActionKind::kOther) return "other";
  return NameOf(kActionKindNames, kind);
}

ActionKind ActionKindFromString(std::string_view name) {
  return ValueOf(kActionKindNames, name).value_or(ActionKind::kOther);
}

std::string LowLevelAction::KindName() const {
  if (kind == ActionKind::kOther) return other_kind;
  return std::string(ToString(kind));
}

std::string_view ToString(Category category) {
  return NameOf(kCategoryNames, category);
}

std::optional<Category> CategoryFromString(std::string_view name) {
  return ValueOf(kCategoryNames, name);
}

std::string_view ToString(Source source) { return NameOf(kSourceNames, source); }

std::optional<Source> SourceFromString(std::string_view name) {
  return ValueOf(kSourceNames, name);
}

std::string_view ToString(Flag flag) { return NameOf(kFlagNames, flag); }

std::optional<Flag> FlagFromString(std::string_view name) {
  return ValueOf(kFlagNames, name);
}

std::string_view ToString(Answer answer) {
  return answer == Answer::kYes ? "yes" : "no";
}

std::optional<Answer> AnswerFromString(std::string_view name) {
  if (name == "yes") return Answer::kYes;
  if (name == "no") return Answer::kNo;
  return std::nullopt;
}

std::string DescribeLowLevelAction(const LowLevelAction& action) {
  switch (action.kind) {
    case ActionKind::kTap:
      return action.point ? "Tap at " + FormatPoint(*action.point) : "Tap";
    case ActionKind::kSwipe:
      if (action.point && action.end_point) {
        return "Swipe from " + FormatPoint(*action.point) + " to " +
               FormatPoint(*action.end_point);
      }
      return "Swipe";
    case ActionKind::kInputText:
      return "Input text \"" + action.text.value_or("") + "\"";
    case ActionKind::kPressBack:
      return "Press back";
    case ActionKind::kPressHome:
      return "Press home";
    case ActionKind::kPressEnter:
      return "Press enter";
    case ActionKind::kWait:
      return "Wait";
    case ActionKind::kOpenApp:
      return "Open app \"" + action.text.value_or("") + "\"";
    case ActionKind::kStatusComplete:
      return "Mark task complete";
    case ActionKind::kStatusInfeasible:
      return "Mark task infeasible";
    case ActionKind::kOther:
      break;
  }
  std::string out = action.other_kind;
  if (action.point) out += " at " + FormatPoint(*action.point);
  if (action.text) out += " \"" + *action.text + "\"";
  return out;
}

std::string ActionText(const Transition& t) {
  if (t.high_action) return t.high_action->description;
  if (t.low_action) return DescribeLowLevelAction(*t.low_action);
  throw PreconditionError("transition " + t.id + " has no action");
}

}  // namespace semwm

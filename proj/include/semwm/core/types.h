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

#ifndef SEMWM_CORE_TYPES_H_
#define SEMWM_CORE_TYPES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semwm {

// Screen-space pixel coordinate. Origin is the top-left corner.
struct Point {
  int x = 0;
  int y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// A screenshot stored beside the manifest and referenced by relative path.
struct Screenshot {
  std::string image_ref;
  std::string sha256;
  int width = 0;
  int height = 0;

  bool Contains(Point p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
  }

  friend bool operator==(const Screenshot&, const Screenshot&) = default;
};

enum class ActionKind {
  kTap,
  kSwipe,
  kInputText,
  kPressBack,
  kPressHome,
  kPressEnter,
  kWait,
  kOpenApp,
  kStatusComplete,
  kStatusInfeasible,
  // Any kind outside the known vocabulary; the raw name is kept in
  // LowLevelAction::other_kind so it survives a round trip.
  kOther,
};

std::string_view ToString(ActionKind kind);
// Unknown names map to kOther.
ActionKind ActionKindFromString(std::string_view name);

struct LowLevelAction {
  ActionKind kind = ActionKind::kWait;
  std::string other_kind;
  std::optional<Point> point;
  std::optional<Point> end_point;
  std::optional<std::string> text;

  // Tap and swipe carry coordinates that can be drawn on a screenshot.
  bool IsSpatial() const {
    return kind == ActionKind::kTap || kind == ActionKind::kSwipe;
  }
  std::string KindName() const;

  friend bool operator==(const LowLevelAction&,
                         const LowLevelAction&) = default;
};

struct HighLevelAction {
  std::string description;

  friend bool operator==(const HighLevelAction&,
                         const HighLevelAction&) = default;
};

enum class Category { kGeneral, kGoogleApps, kSystem, kWebShopping };
inline constexpr Category kAllCategories[] = {
    Category::kGeneral, Category::kGoogleApps, Category::kSystem,
    Category::kWebShopping};

std::string_view ToString(Category category);
std::optional<Category> CategoryFromString(std::string_view name);

enum class Source { kAitw, kAndroidControl, kSynthetic };

std::string_view ToString(Source source);
std::optional<Source> SourceFromString(std::string_view name);

struct Transition {
  std::string id;
  Screenshot before;
  Screenshot after;
  std::optional<LowLevelAction> low_action;
  std::optional<HighLevelAction> high_action;
  std::string goal;
  Category category = Category::kGeneral;
  std::string app;
  Source source = Source::kSynthetic;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Tri-state outcome of one filter stage.
enum class Flag { kUnevaluated, kPass, kFail };

std::string_view ToString(Flag flag);
std::optional<Flag> FlagFromString(std::string_view name);
inline Flag FlagOf(bool passed) { return passed ? Flag::kPass : Flag::kFail; }

enum class Answer { kYes, kNo };

std::string_view ToString(Answer answer);
std::optional<Answer> AnswerFromString(std::string_view name);

struct QaFlags {
  Flag self_check_passed = Flag::kUnevaluated;
  Flag relevance_passed = Flag::kUnevaluated;
  Flag human_correct = Flag::kUnevaluated;
  Flag human_relevant = Flag::kUnevaluated;
  Flag human_unambiguous = Flag::kUnevaluated;

  friend bool operator==(const QaFlags&, const QaFlags&) = default;
};

struct QAPair {
  std::string id;
  std::string transition_id;
  std::string question;
  Answer answer = Answer::kYes;
  QaFlags flags;

  // True iff every stage, automatic and human, passed this pair.
  bool BenchmarkEligible() const {
    return flags.self_check_passed == Flag::kPass &&
           flags.relevance_passed == Flag::kPass &&
           flags.human_correct == Flag::kPass &&
           flags.human_relevant == Flag::kPass &&
           flags.human_unambiguous == Flag::kPass;
  }

  friend bool operator==(const QAPair&, const QAPair&) = default;
};

struct ChangeDescription {
  std::string transition_id;
  std::string text;
  int candidate_index = 0;
  bool selected = false;

  friend bool operator==(const ChangeDescription&,
                         const ChangeDescription&) = default;
};

// Renders a low-level action the way it is shown to annotators, e.g.
// "Tap at (200, 1112)".
std::string DescribeLowLevelAction(const LowLevelAction& action);

// The action text used in prompts: the high-level description when present,
// otherwise the rendered low-level action.
std::string ActionText(const Transition& t);

}  // namespace semwm

#endif  // SEMWM_CORE_TYPES_H_

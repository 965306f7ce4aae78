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

#include "semwm/core/validate.h"

#include <algorithm>

#include "semwm/core/text.h"

namespace semwm {

std::string_view ToString(Violation v) {
  switch (v) {
    case Violation::kEmptyId: return "EMPTY_ID";
    case Violation::kBadDimensions: return "BAD_DIMENSIONS";
    case Violation::kNoAction: return "NO_ACTION";
    case Violation::kEmptyHighLevelAction: return "EMPTY_HIGH_LEVEL_ACTION";
    case Violation::kMissingTapPoint: return "MISSING_TAP_POINT";
    case Violation::kMissingSwipeStart: return "MISSING_SWIPE_START";
    case Violation::kMissingSwipeEnd: return "MISSING_SWIPE_END";
    case Violation::kMissingInputText: return "MISSING_INPUT_TEXT";
    case Violation::kPointOutOfBounds: return "POINT_OUT_OF_BOUNDS";
    case Violation::kEmptyQuestion: return "EMPTY_QUESTION";
    case Violation::kMissingQuestionMark: return "MISSING_QUESTION_MARK";
    case Violation::kNoDescriptionSelected: return "NO_DESCRIPTION_SELECTED";
    case Violation::kMultipleDescriptionsSelected:
      return "MULTIPLE_DESCRIPTIONS_SELECTED";
  }
  return "UNKNOWN";
}

ValidationReport ValidateTransition(const Transition& t) {
  ValidationReport report;
  if (Trim(t.id).empty()) report.push_back(Violation::kEmptyId);
  if (t.before.width <= 0 || t.before.height <= 0 || t.after.width <= 0 ||
      t.after.height <= 0) {
    report.push_back(Violation::kBadDimensions);
  }
  if (!t.low_action && !t.high_action) report.push_back(Violation::kNoAction);
  if (t.high_action && Trim(t.high_action->description).empty()) {
    report.push_back(Violation::kEmptyHighLevelAction);
  }
  if (t.low_action) {
    const LowLevelAction& a = *t.low_action;
    switch (a.kind) {
      case ActionKind::kTap:
        if (!a.point) report.push_back(Violation::kMissingTapPoint);
        break;
      case ActionKind::kSwipe:
        if (!a.point) report.push_back(Violation::kMissingSwipeStart);
        if (!a.end_point) report.push_back(Violation::kMissingSwipeEnd);
        break;
      case ActionKind::kInputText:
        if (!a.text) report.push_back(Violation::kMissingInputText);
        break;
      default:
        break;
    }
    const bool out_of_bounds =
        (a.point && !t.before.Contains(*a.point)) ||
        (a.end_point && !t.before.Contains(*a.end_point));
    if (out_of_bounds) report.push_back(Violation::kPointOutOfBounds);
  }
  return report;
}

ValidationReport ValidateQaPair(const QAPair& qa) {
  ValidationReport report;
  if (Trim(qa.id).empty()) report.push_back(Violation::kEmptyId);
  const std::string question = NormalizeWhitespace(qa.question);
  if (question.empty()) {
    report.push_back(Violation::kEmptyQuestion);
  } else if (question.back() != '?') {
    report.push_back(Violation::kMissingQuestionMark);
  }
  return report;
}

ValidationReport ValidateSelection(const std::vector<ChangeDescription>& cands) {
  const auto selected = std::count_if(
      cands.begin(), cands.end(),
      [](const ChangeDescription& d) { return d.selected; });
  if (selected == 0) return {Violation::kNoDescriptionSelected};
  if (selected > 1) return {Violation::kMultipleDescriptionsSelected};
  return {};
}

}  // namespace semwm

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

#ifndef SEMWM_CORE_VALIDATE_H_
#define SEMWM_CORE_VALIDATE_H_

#include <string_view>
#include <vector>

#include "semwm/core/types.h"

namespace semwm {

enum class Violation {
  kEmptyId,
  kBadDimensions,
  kNoAction,
  kEmptyHighLevelAction,
  kMissingTapPoint,
  kMissingSwipeStart,
  kMissingSwipeEnd,
  kMissingInputText,
  kPointOutOfBounds,
  kEmptyQuestion,
  kMissingQuestionMark,
  kNoDescriptionSelected,
  kMultipleDescriptionsSelected,
};

// Upper-snake code, e.g. "MISSING_SWIPE_END".
std::string_view ToString(Violation v);

// Empty means valid. Violations are data; these functions never throw.
using ValidationReport = std::vector<Violation>;

ValidationReport ValidateTransition(const Transition& t);
ValidationReport ValidateQaPair(const QAPair& qa);

// Checks the best-of-n invariant for the candidates of a single transition.
ValidationReport ValidateSelection(const std::vector<ChangeDescription>& cands);

}  // namespace semwm

#endif  // SEMWM_CORE_VALIDATE_H_

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

#ifndef SEMWM_ANNOTATE_PARSE_H_
#define SEMWM_ANNOTATE_PARSE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semwm/core/types.h"

namespace semwm::annotate {

// Leading "yes" or "no", case-insensitive, after any leading punctuation or
// whitespace, and not followed by another letter. "Yes, the cart updates."
// is yes; "Not sure" and "yesterday" are nullopt.
std::optional<Answer> NormalizeAnswer(std::string_view reply);

struct QaItem {
  std::string question;
  Answer answer = Answer::kYes;

  friend bool operator==(const QaItem&, const QaItem&) = default;
};

// Strict parser for "Q: ...\nA: ..." blocks. Blank lines between and within
// pairs are allowed; any other line, including markdown-decorated labels,
// is a ParseError naming the line. Questions must end with '?'.
std::vector<QaItem> ParseQaBlock(std::string_view text);
std::string SerializeQaBlock(const std::vector<QaItem>& items);

struct ActionChange {
  std::string action;
  std::string change;
};

// Parses the "Action Description:" / "Change Description:" reply. The change
// text runs to the end of the reply.
ActionChange ParseActionChange(std::string_view text);

}  // namespace semwm::annotate

#endif  // SEMWM_ANNOTATE_PARSE_H_

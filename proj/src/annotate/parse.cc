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

#include "semwm/annotate/parse.h"

#include <cctype>

#include "semwm/core/error.h"
#include "semwm/core/text.h"

namespace semwm::annotate {
namespace {

bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool WordAt(std::string_view s, std::string_view word) {
  if (s.size() < word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != word[i]) return false;
  }
  return s.size() == word.size() || !IsAlpha(s[word.size()]);
}

// Returns the text after `label` when the trimmed line starts with it.
std::optional<std::string_view> AfterLabel(std::string_view line,
                                           std::string_view label) {
  if (!StartsWith(line, label)) return std::nullopt;
  return Trim(line.substr(label.size()));
}

}  // namespace

std::optional<Answer> NormalizeAnswer(std::string_view reply) {
  std::size_t i = 0;
  while (i < reply.size() && !IsAlnum(reply[i])) ++i;
  const std::string_view rest = reply.substr(i);
  if (WordAt(rest, "yes")) return Answer::kYes;
  if (WordAt(rest, "no")) return Answer::kNo;
  return std::nullopt;
}

std::vector<QaItem> ParseQaBlock(std::string_view text) {
  std::vector<QaItem> out;
  std::optional<std::string> pending;
  int pending_line = 0;
  int line_no = 0;
  for (const std::string& raw : SplitLines(text)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (auto q = AfterLabel(line, "Q:")) {
      if (pending) {
        throw ParseError("question without an answer", pending_line);
      }
      std::string question = NormalizeWhitespace(*q);
      if (question.empty()) throw ParseError("empty question", line_no);
      if (question.back() != '?') {
        throw ParseError("question does not end with '?'", line_no);
      }
      pending = std::move(question);
      pending_line = line_no;
      continue;
    }
    if (auto a = AfterLabel(line, "A:")) {
      if (!pending) throw ParseError("answer without a question", line_no);
      auto answer = NormalizeAnswer(*a);
      if (!answer) {
        throw ParseError("answer is not yes or no: '" + std::string(*a) + "'",
                         line_no);
      }
      out.push_back(QaItem{std::move(*pending), *answer});
      pending.reset();
      continue;
    }
    throw ParseError("unexpected line: '" + std::string(line) + "'", line_no);
  }
  if (pending) throw ParseError("question without an answer", pending_line);
  return out;
}

std::string SerializeQaBlock(const std::vector<QaItem>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += "\n";
    out += "Q: " + items[i].question + "\n";
    out += "A: " + std::string(items[i].answer == Answer::kYes ? "Yes" : "No") +
           "\n";
  }
  return out;
}

ActionChange ParseActionChange(std::string_view text) {
  static constexpr std::string_view kAction = "Action Description:";
  static constexpr std::string_view kChange = "Change Description:";
  const std::size_t a = text.find(kAction);
  const std::size_t c = text.find(kChange);
  if (a == std::string_view::npos) {
    throw ParseError("reply is missing 'Action Description:'");
  }
  if (c == std::string_view::npos) {
    throw ParseError("reply is missing 'Change Description:'");
  }
  if (c < a) {
    throw ParseError("'Change Description:' precedes 'Action Description:'");
  }
  ActionChange out;
  out.action = NormalizeWhitespace(
      text.substr(a + kAction.size(), c - a - kAction.size()));
  out.change = std::string(Trim(text.substr(c + kChange.size())));
  if (out.action.empty()) throw ParseError("empty action description");
  if (out.change.empty()) throw ParseError("empty change description");
  return out;
}

}  // namespace semwm::annotate

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

#ifndef SEMWM_BENCH_JUDGMENT_H_
#define SEMWM_BENCH_JUDGMENT_H_

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace semwm::bench {

inline constexpr int kMaxComponentScore = 5;

struct GenJudgment {
  int accuracy = 0;
  int completeness = 0;
  int relevance = 0;
  int overall = 0;  // always accuracy + completeness + relevance
  std::string justification;

  int ComponentSum() const { return accuracy + completeness + relevance; }
  friend bool operator==(const GenJudgment&, const GenJudgment&) = default;
};

struct ParsedJudgment {
  GenJudgment judgment;
  std::vector<std::string> warnings;
};

// Extracts the judge's delimited score block. Chatter outside the delimiters
// is ignored. Scores are integers in [0, 5], optionally written "[4]" or
// "4/5"; zero is accepted with a warning. The judge's overall score is
// advisory: overall is recomputed and a mismatch or omission is a warning.
// Lines in the block other than the four labels form the justification.
// Throws ParseError on missing delimiters or labels, non-integer scores and
// out-of-range scores.
ParsedJudgment ParseJudgeBlock(std::string_view text);

void to_json(nlohmann::json& j, const GenJudgment& g);
void from_json(const nlohmann::json& j, GenJudgment& g);

}  // namespace semwm::bench

#endif  // SEMWM_BENCH_JUDGMENT_H_

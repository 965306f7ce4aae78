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

#include "semwm/bench/judgment.h"

#include <algorithm>
#include <cctype>
#include <optional>

#include "semwm/core/error.h"
#include "semwm/core/text.h"

namespace semwm::bench {
namespace {

using nlohmann::json;

struct Label {
  std::string_view name;
  int GenJudgment::*field;  // nullptr for the overall score
};

constexpr Label kLabels[] = {
    {"accuracy", &GenJudgment::accuracy},
    {"completeness", &GenJudgment::completeness},
    {"relevance", &GenJudgment::relevance},
    {"overall score", nullptr},
};

std::size_t FindMarker(const std::string& lower, std::string_view marker,
                       std::size_t from) {
  return lower.find(marker, from);
}

// Parses "4", "[4]", "4/5", "[4/5]". Anything else is a ParseError.
int ParseScore(std::string_view raw, std::string_view label) {
  std::string_view v = Trim(raw);
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') {
    v = Trim(v.substr(1, v.size() - 2));
  }
  if (auto slash = v.find('/'); slash != std::string_view::npos) {
    const std::string_view denom = Trim(v.substr(slash + 1));
    const bool digits =
        !denom.empty() && std::all_of(denom.begin(), denom.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c)) != 0;
        });
    if (!digits) {
      throw ParseError(std::string(label) + ": non-integer score '" +
                       std::string(raw) + "'");
    }
    v = Trim(v.substr(0, slash));
  }
  bool negative = false;
  if (!v.empty() && v.front() == '-') {
    negative = true;
    v.remove_prefix(1);
  }
  if (v.empty() || v.size() > 6 ||
      !std::all_of(v.begin(), v.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) != 0;
      })) {
    throw ParseError(std::string(label) + ": non-integer score '" +
                     std::string(raw) + "'");
  }
  const int value = std::stoi(std::string(v));
  return negative ? -value : value;
}

}  // namespace

ParsedJudgment ParseJudgeBlock(std::string_view text) {
  const std::string lower = ToLower(text);
  const std::size_t begin = FindMarker(lower, "begin of response", 0);
  if (begin == std::string::npos) {
    throw ParseError("judge reply has no 'Begin of response' delimiter");
  }
  const std::size_t end = FindMarker(lower, "end of response", begin);
  if (end == std::string::npos) {
    throw ParseError("judge reply has no 'End of response' delimiter");
  }
  // The block spans from the line after the begin marker to the line holding
  // the end marker.
  std::size_t body_start = text.find('\n', begin);
  if (body_start == std::string_view::npos || body_start > end) body_start = end;
  std::size_t body_end = text.rfind('\n', end);
  if (body_end == std::string_view::npos || body_end < body_start) {
    body_end = body_start;
  }
  const std::string_view body = text.substr(body_start, body_end - body_start);

  ParsedJudgment out;
  std::optional<int> values[4];
  std::vector<std::string> rest;
  for (const std::string& raw_line : SplitLines(body)) {
    const std::string_view line = Trim(raw_line);
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    bool matched = false;
    if (colon != std::string_view::npos) {
      const std::string key = ToLower(Trim(line.substr(0, colon)));
      for (int i = 0; i < 4; ++i) {
        if (key != kLabels[i].name) continue;
        if (values[i]) {
          throw ParseError("duplicate '" + std::string(kLabels[i].name) + "'");
        }
        values[i] = ParseScore(line.substr(colon + 1), kLabels[i].name);
        matched = true;
        break;
      }
    }
    if (!matched) rest.emplace_back(line);
  }
  for (int i = 0; i < 3; ++i) {
    if (!values[i]) {
      throw ParseError("judge block is missing '" +
                       std::string(kLabels[i].name) + "'");
    }
    const int v = *values[i];
    if (v < 0 || v > kMaxComponentScore) {
      throw ParseError(std::string(kLabels[i].name) + " score " +
                       std::to_string(v) + " outside [0, 5]");
    }
    if (v == 0) {
      out.warnings.push_back(std::string(kLabels[i].name) +
                             " score 0 is below the prompt's 1-5 scale");
    }
    out.judgment.*(kLabels[i].field) = v;
  }
  out.judgment.overall = out.judgment.ComponentSum();
  if (!values[3]) {
    out.warnings.push_back("judge block has no overall score; recomputed");
  } else if (*values[3] != out.judgment.overall) {
    out.warnings.push_back("judge overall " + std::to_string(*values[3]) +
                           " != component sum " +
                           std::to_string(out.judgment.overall) +
                           "; recomputed");
  }
  out.judgment.justification = Join(rest, "\n");
  return out;
}

void to_json(json& j, const GenJudgment& g) {
  j = json{{"accuracy", g.accuracy},
           {"completeness", g.completeness},
           {"relevance", g.relevance},
           {"overall", g.overall},
           {"justification", g.justification}};
}

void from_json(const json& j, GenJudgment& g) {
  g.accuracy = j.at("accuracy").get<int>();
  g.completeness = j.at("completeness").get<int>();
  g.relevance = j.at("relevance").get<int>();
  g.overall = g.ComponentSum();
  g.justification = j.value("justification", "");
}

}  // namespace semwm::bench

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

#ifndef SEMWM_BENCH_REPORT_H_
#define SEMWM_BENCH_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "semwm/bench/judgment.h"
#include "semwm/core/types.h"

namespace semwm::bench {

struct GenReport {
  std::map<Category, std::optional<double>> per_category;  // mean overall
  double accuracy = 0.0;
  double completeness = 0.0;
  double relevance = 0.0;
  double overall = 0.0;
  int count = 0;
  int excluded = 0;  // samples whose judgment failed
};

// Arithmetic means over all judgments; per-category means use that
// category's samples only and are nullopt for empty categories. Sums are
// accumulated in integers, so the result does not depend on input order.
// Throws PreconditionError on empty input.
GenReport AggregateGen(
    const std::vector<std::pair<GenJudgment, Category>>& judgments);

struct QAResult {
  std::string qa_id;
  std::optional<Answer> answer;  // nullopt: unparseable
  bool correct = false;
};

struct QaReport {
  double accuracy = 0.0;  // percent
  int correct = 0;
  int total = 0;
  int unparseable = 0;
};

QaReport AggregateQa(const std::vector<QAResult>& results);

double Round2(double x);
// "%.2f"
std::string Format2(double x);

// Report JSON. Means are rounded to two decimals.
nlohmann::json ToJson(const GenReport& r);
nlohmann::json ToJson(const QaReport& r);

void to_json(nlohmann::json& j, const QAResult& r);

}  // namespace semwm::bench

#endif  // SEMWM_BENCH_REPORT_H_

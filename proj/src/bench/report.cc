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

#include "semwm/bench/report.h"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "semwm/core/error.h"

namespace semwm::bench {

using nlohmann::json;

GenReport AggregateGen(
    const std::vector<std::pair<GenJudgment, Category>>& judgments) {
  if (judgments.empty()) {
    throw PreconditionError("cannot aggregate an empty judgment list");
  }
  std::int64_t acc = 0, comp = 0, rel = 0;
  std::map<Category, std::pair<std::int64_t, std::int64_t>> per;  // sum, n
  for (const auto& [g, category] : judgments) {
    acc += g.accuracy;
    comp += g.completeness;
    rel += g.relevance;
    auto& [sum, n] = per[category];
    sum += g.ComponentSum();
    ++n;
  }
  const double n = static_cast<double>(judgments.size());
  GenReport r;
  r.count = static_cast<int>(judgments.size());
  r.accuracy = static_cast<double>(acc) / n;
  r.completeness = static_cast<double>(comp) / n;
  r.relevance = static_cast<double>(rel) / n;
  r.overall = static_cast<double>(acc + comp + rel) / n;
  for (Category c : kAllCategories) {
    auto it = per.find(c);
    r.per_category[c] =
        it == per.end()
            ? std::nullopt
            : std::optional<double>(static_cast<double>(it->second.first) /
                                    static_cast<double>(it->second.second));
  }
  return r;
}

QaReport AggregateQa(const std::vector<QAResult>& results) {
  if (results.empty()) {
    throw PreconditionError("cannot aggregate an empty result list");
  }
  QaReport r;
  r.total = static_cast<int>(results.size());
  for (const QAResult& q : results) {
    if (q.correct) ++r.correct;
    if (!q.answer) ++r.unparseable;
  }
  r.accuracy = 100.0 * r.correct / r.total;
  return r;
}

double Round2(double x) { return std::round(x * 100.0) / 100.0; }

std::string Format2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

json ToJson(const GenReport& r) {
  json per = json::object();
  for (const auto& [c, mean] : r.per_category) {
    per[std::string(ToString(c))] = mean ? json(Round2(*mean)) : json(nullptr);
  }
  return json{{"task", "generation"},
              {"count", r.count},
              {"excluded", r.excluded},
              {"per_category", per},
              {"breakdown",
               {{"accuracy", Round2(r.accuracy)},
                {"completeness", Round2(r.completeness)},
                {"relevance", Round2(r.relevance)}}},
              {"overall", Round2(r.overall)}};
}

json ToJson(const QaReport& r) {
  return json{{"task", "qa"},
              {"count", r.total},
              {"correct", r.correct},
              {"unparseable", r.unparseable},
              {"accuracy", Round2(r.accuracy)},
              {"accuracy_text", Format2(r.accuracy)}};
}

void to_json(json& j, const QAResult& r) {
  j = json{{"qa_id", r.qa_id},
           {"answer", r.answer ? json(ToString(*r.answer)) : json("unparseable")},
           {"correct", r.correct}};
}

}  // namespace semwm::bench

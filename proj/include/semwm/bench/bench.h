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

#ifndef SEMWM_BENCH_BENCH_H_
#define SEMWM_BENCH_BENCH_H_

#include <optional>
#include <string>
#include <vector>

#include "semwm/bench/judgment.h"
#include "semwm/bench/report.h"
#include "semwm/core/image_store.h"
#include "semwm/core/types.h"
#include "semwm/gateway/gateway.h"

namespace semwm::bench {

// World-model queries. Both attach only the before screenshot.
std::string PredictTransitionDescription(
    const std::vector<std::uint8_t>& before_png, const HighLevelAction& action,
    gateway::ChatGateway& g);
std::optional<Answer> PredictNextStateAnswer(
    const std::vector<std::uint8_t>& before_png, const HighLevelAction& action,
    const std::string& question, gateway::ChatGateway& g);

class JudgmentError : public Error {
 public:
  using Error::Error;
};

// Scores `prediction` against `reference` with the before and ground-truth
// after images attached. A malformed block is re-requested once; a second
// failure throws JudgmentError.
ParsedJudgment JudgeGeneration(const Transition& t,
                               const std::string& prediction,
                               const std::string& reference,
                               gateway::ChatGateway& judge,
                               const ImageStore& images);

struct GenSample {
  std::string transition_id;
  Category category = Category::kGeneral;
  std::string model;
  std::string prediction;
  std::optional<GenJudgment> judgment;
  std::string error;  // set when prediction or judgment failed
};

nlohmann::json ToJson(const GenSample& s);

struct GenEval {
  std::vector<GenSample> samples;  // sorted by transition id
  GenReport report;
};

// Next-state generation over `transitions`, judged against the selected
// description of each. Every transition needs a high-level action and
// exactly one selected description. Failed samples are excluded from the
// means and counted in report.excluded.
GenEval RunGenEval(const std::vector<Transition>& transitions,
                   const std::vector<ChangeDescription>& descriptions,
                   gateway::ChatGateway& model, gateway::ChatGateway& judge,
                   const ImageStore& images, const std::string& model_name,
                   int concurrency);

struct QaEval {
  std::vector<QAResult> results;  // sorted by QA id
  QaReport report;
};

// Next-state QA over `qas`. Unparseable answers count as incorrect.
QaEval RunQaEval(const std::vector<Transition>& transitions,
                 const std::vector<QAPair>& qas, gateway::ChatGateway& model,
                 const ImageStore& images, int concurrency);

}  // namespace semwm::bench

#endif  // SEMWM_BENCH_BENCH_H_

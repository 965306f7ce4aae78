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

#ifndef SEMWM_FILTER_FILTER_H_
#define SEMWM_FILTER_FILTER_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semwm/core/image_store.h"
#include "semwm/core/types.h"
#include "semwm/gateway/gateway.h"

namespace semwm::filter {

struct Judge {
  gateway::ChatGateway& gateway;
  const ImageStore& images;
};

// The annotating model answers its own question with the ground-truth next
// state attached. Pass iff its answer matches qa.answer; unparseable replies
// fail. Gateway errors propagate.
bool SelfCheck(const QAPair& qa, const Transition& t, const Judge& j);

// Pass iff the judge says the question concerns changes relevant to the
// action. Requires t.high_action.
bool RelevanceCheck(const QAPair& qa, const Transition& t, const Judge& j);

// Marks exactly one candidate selected and returns its position in `cands`.
// Identical texts are shown to the judge once. A single distinct candidate is
// selected without a call. An out-of-range reply is re-requested once, then
// candidate 0 is chosen with a warning.
std::size_t SelectBestDescription(std::vector<ChangeDescription>& cands,
                                  const Transition& t, const Judge& j);

// Reads the 1-based index from a select-best reply; nullopt when absent.
std::optional<int> ParseIndexReply(std::string_view reply);

struct StageReport {
  std::string stage;
  int input = 0;
  int pass = 0;
  int fail = 0;
  int unevaluated = 0;
  int errors = 0;  // gateway failures that left a QA unevaluated

  bool Reconciles() const { return input == pass + fail + unevaluated; }
};

nlohmann::json ToJson(const StageReport& r);

// Stage runners. Each evaluates only QAs in its input set whose own flag is
// still unevaluated, so reruns and resumed runs are idempotent. Self-check
// input is every QA; relevance input is the self-check passes. QAs whose
// transition is unknown are a PreconditionError.
StageReport RunSelfCheckStage(std::vector<QAPair>& qas,
                              const std::map<std::string, Transition>& by_id,
                              const Judge& j, int concurrency);
StageReport RunRelevanceStage(std::vector<QAPair>& qas,
                              const std::map<std::string, Transition>& by_id,
                              const Judge& j, int concurrency);

// Best-of-n selection for every transition in `descriptions`. Output is
// sorted by (transition id, candidate index).
std::vector<ChangeDescription> RunSelectBestStage(
    std::vector<ChangeDescription> descriptions,
    const std::map<std::string, Transition>& by_id, const Judge& j,
    int concurrency);

// Human verdicts arrive from two review queues: "qa" (answer + relevance) and
// "ambiguity". A "full" verdict carries all three fields at once.
enum class VerdictKind { kQa, kAmbiguity, kFull };

std::string_view ToString(VerdictKind k);
std::optional<VerdictKind> VerdictKindFromString(std::string_view s);

struct HumanVerdict {
  std::string qa_id;
  VerdictKind kind = VerdictKind::kFull;
  std::optional<Answer> answer;
  std::optional<bool> relevant;
  std::optional<bool> unambiguous;
  std::string idempotency_key;

  // Throws ParseError when a field required by `kind` is missing.
  void Validate() const;
};

void to_json(nlohmann::json& j, const HumanVerdict& v);
void from_json(const nlohmann::json& j, HumanVerdict& v);

struct IngestResult {
  std::vector<QAPair> qas;        // every input QA with human flags applied
  std::vector<QAPair> survivors;  // all three human checks passed
  std::vector<std::string> warnings;
  StageReport report;
};

// Applies verdicts in log order; for each (qa, kind) the latest wins. A QA
// survives iff the human answer matches, it is relevant and unambiguous.
// A verdict for an unknown QA id is a PreconditionError.
IngestResult IngestHumanVerdicts(std::vector<QAPair> qas,
                                 const std::vector<HumanVerdict>& verdicts);

std::map<std::string, Transition> IndexById(const std::vector<Transition>& ts);

}  // namespace semwm::filter

#endif  // SEMWM_FILTER_FILTER_H_

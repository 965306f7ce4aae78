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

#include "semwm/bench/bench.h"

#include <algorithm>
#include <map>

#include <spdlog/spdlog.h>

#include "semwm/annotate/parse.h"
#include "semwm/annotate/prompts.h"
#include "semwm/core/parallel.h"

namespace semwm::bench {
namespace {

using annotate::PromptTemplate;
using annotate::RenderTemplate;
using gateway::ChatRequest;
using gateway::ImageContent;
using gateway::RequestTag;
using nlohmann::json;

HighLevelAction ActionOf(const Transition& t) {
  if (!t.high_action) {
    throw PreconditionError("transition " + t.id +
                            " has no high-level action; run annotate first");
  }
  return *t.high_action;
}

}  // namespace

std::string PredictTransitionDescription(
    const std::vector<std::uint8_t>& before_png, const HighLevelAction& action,
    gateway::ChatGateway& g) {
  const std::string prompt = RenderTemplate(PromptTemplate("generation"),
                                            {{"action", action.description}});
  return g
      .Complete(ChatRequest::UserTurn(RequestTag::kGeneration, prompt,
                                      {ImageContent{"image/png", before_png}}))
      .text;
}

std::optional<Answer> PredictNextStateAnswer(
    const std::vector<std::uint8_t>& before_png, const HighLevelAction& action,
    const std::string& question, gateway::ChatGateway& g) {
  const std::string prompt =
      RenderTemplate(PromptTemplate("eval_qa"),
                     {{"action", action.description}, {"question", question}});
  const auto reply = g.Complete(ChatRequest::UserTurn(
      RequestTag::kQa, prompt, {ImageContent{"image/png", before_png}}));
  return annotate::NormalizeAnswer(reply.text);
}

ParsedJudgment JudgeGeneration(const Transition& t,
                               const std::string& prediction,
                               const std::string& reference,
                               gateway::ChatGateway& judge,
                               const ImageStore& images) {
  const std::string prompt = RenderTemplate(PromptTemplate("judge"),
                                            {{"action", ActionOf(t).description},
                                             {"response", prediction},
                                             {"changes", reference}});
  const ChatRequest req = ChatRequest::UserTurn(
      RequestTag::kJudge, prompt,
      {ImageContent{"image/png", images.Load(t.before)},
       ImageContent{"image/png", images.Load(t.after)}});
  std::string problem;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto reply = judge.Complete(req);
    try {
      ParsedJudgment parsed = ParseJudgeBlock(reply.text);
      for (const std::string& w : parsed.warnings) {
        spdlog::warn("judge {}: {}", t.id, w);
      }
      return parsed;
    } catch (const ParseError& e) {
      problem = e.what();
    }
  }
  throw JudgmentError("judge block for " + t.id + " malformed twice: " +
                      problem);
}

json ToJson(const GenSample& s) {
  json j{{"transition_id", s.transition_id},
         {"category", ToString(s.category)},
         {"model", s.model},
         {"prediction", s.prediction}};
  if (s.judgment) j["judgment"] = *s.judgment;
  if (!s.error.empty()) j["error"] = s.error;
  return j;
}

GenEval RunGenEval(const std::vector<Transition>& transitions,
                   const std::vector<ChangeDescription>& descriptions,
                   gateway::ChatGateway& model, gateway::ChatGateway& judge,
                   const ImageStore& images, const std::string& model_name,
                   int concurrency) {
  std::map<std::string, const ChangeDescription*> reference;
  for (const ChangeDescription& d : descriptions) {
    if (!d.selected) continue;
    if (!reference.emplace(d.transition_id, &d).second) {
      throw PreconditionError("several selected descriptions for " +
                              d.transition_id);
    }
  }
  std::vector<Transition> sorted = transitions;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Transition& a, const Transition& b) {
                     return a.id < b.id;
                   });
  for (const Transition& t : sorted) {
    ActionOf(t);
    if (!reference.contains(t.id)) {
      throw PreconditionError("no selected description for " + t.id);
    }
  }
  GenEval out;
  out.samples.resize(sorted.size());
  ParallelFor(sorted.size(), concurrency, [&](std::size_t i) {
    const Transition& t = sorted[i];
    GenSample& s = out.samples[i];
    s.transition_id = t.id;
    s.category = t.category;
    s.model = model_name;
    try {
      s.prediction = PredictTransitionDescription(images.Load(t.before),
                                                  ActionOf(t), model);
      s.judgment = JudgeGeneration(t, s.prediction,
                                   reference.at(t.id)->text, judge, images)
                       .judgment;
    } catch (const gateway::GatewayError& e) {
      s.error = e.what();
    } catch (const JudgmentError& e) {
      s.error = e.what();
    }
  });
  std::vector<std::pair<GenJudgment, Category>> scored;
  int excluded = 0;
  for (const GenSample& s : out.samples) {
    if (s.judgment) {
      scored.emplace_back(*s.judgment, s.category);
    } else {
      ++excluded;
      spdlog::warn("eval gen: {} excluded: {}", s.transition_id, s.error);
    }
  }
  if (scored.empty()) throw JudgmentError("every generation sample failed");
  out.report = AggregateGen(scored);
  out.report.excluded = excluded;
  return out;
}

QaEval RunQaEval(const std::vector<Transition>& transitions,
                 const std::vector<QAPair>& qas, gateway::ChatGateway& model,
                 const ImageStore& images, int concurrency) {
  std::map<std::string, const Transition*> by_id;
  for (const Transition& t : transitions) by_id[t.id] = &t;
  std::vector<QAPair> sorted = qas;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const QAPair& a, const QAPair& b) { return a.id < b.id; });
  for (const QAPair& qa : sorted) {
    auto it = by_id.find(qa.transition_id);
    if (it == by_id.end()) {
      throw PreconditionError("QA " + qa.id + " references unknown transition");
    }
    ActionOf(*it->second);
  }
  QaEval out;
  out.results.resize(sorted.size());
  ParallelFor(sorted.size(), concurrency, [&](std::size_t i) {
    const QAPair& qa = sorted[i];
    const Transition& t = *by_id.at(qa.transition_id);
    QAResult& r = out.results[i];
    r.qa_id = qa.id;
    r.answer = PredictNextStateAnswer(images.Load(t.before), ActionOf(t),
                                      qa.question, model);
    r.correct = r.answer && *r.answer == qa.answer;
  });
  out.report = AggregateQa(out.results);
  return out;
}

}  // namespace semwm::bench

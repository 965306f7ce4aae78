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

#include "semwm/annotate/annotate.h"

#include <algorithm>

#include <spdlog/spdlog.h>

#include "semwm/annotate/parse.h"
#include "semwm/annotate/prompts.h"
#include "semwm/core/error.h"
#include "semwm/core/parallel.h"

namespace semwm::annotate {
namespace {

using gateway::ChatRequest;
using gateway::ImageContent;
using gateway::RequestTag;

ImageContent Png(std::vector<std::uint8_t> bytes) {
  return ImageContent{"image/png", std::move(bytes)};
}

// The raw action shown to the annotator: the low-level action when present.
std::string RawActionText(const Transition& t) {
  if (t.low_action) return DescribeLowLevelAction(*t.low_action);
  return ActionText(t);
}

ChatRequest ActionChangeRequest(const Transition& t, const Annotator& a) {
  std::vector<std::uint8_t> before = a.images.Load(t.before);
  std::vector<std::uint8_t> marked = before;
  if (t.low_action) {
    marked = overlay::ComposeActionVisual(t, before, a.style).png;
  }
  const std::string prompt = RenderTemplate(
      PromptTemplate("action_change"),
      {{"Height", std::to_string(t.before.height)},
       {"Width", std::to_string(t.before.width)},
       {"action", RawActionText(t)},
       {"goal", t.goal}});
  return ChatRequest::UserTurn(
      RequestTag::kAnnotation, prompt,
      {Png(std::move(before)), Png(std::move(marked)),
       Png(a.images.Load(t.after))});
}

}  // namespace

std::pair<HighLevelAction, ChangeDescription> AnnotateActionAndChange(
    const Transition& t, const Annotator& a) {
  const auto reply = a.gateway.Complete(ActionChangeRequest(t, a));
  ActionChange parsed;
  try {
    parsed = ParseActionChange(reply.text);
  } catch (const ParseError& e) {
    throw ParseError("transition " + t.id + ": " + e.what());
  }
  return {HighLevelAction{parsed.action},
          ChangeDescription{t.id, parsed.change, 0, false}};
}

std::vector<ChangeDescription> GenerateDescriptions(const Transition& t,
                                                    const Annotator& a, int n) {
  if (n < 1) throw PreconditionError("description count must be >= 1");
  std::vector<ChangeDescription> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    ChangeDescription d = AnnotateActionAndChange(t, a).second;
    d.candidate_index = i;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<QAPair> GenerateQaCandidates(const Transition& t,
                                         const Annotator& a) {
  std::string action = t.high_action
                           ? t.high_action->description
                           : AnnotateActionAndChange(t, a).first.description;
  const std::string prompt =
      RenderTemplate(PromptTemplate("qa_candidates"), {{"action", action}});
  std::string problem;
  std::string last_reply;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto reply = a.gateway.Complete(ChatRequest::UserTurn(
        RequestTag::kAnnotation, prompt,
        {Png(a.images.Load(t.before)), Png(a.images.Load(t.after))}));
    last_reply = reply.text;
    std::vector<QaItem> items;
    try {
      items = ParseQaBlock(reply.text);
    } catch (const ParseError& e) {
      problem = e.what();
      continue;
    }
    if (items.size() != kQaPerTransition) {
      problem = "expected " + std::to_string(kQaPerTransition) +
                " QA pairs, got " + std::to_string(items.size());
      continue;
    }
    std::vector<QAPair> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      QAPair qa;
      qa.id = t.id + "/qa" + std::to_string(i);
      qa.transition_id = t.id;
      qa.question = std::move(items[i].question);
      qa.answer = items[i].answer;
      out.push_back(std::move(qa));
    }
    return out;
  }
  throw ParseError("transition " + t.id + ": " + problem +
                   " after retry; raw reply:\n" + last_reply);
}

AnnotationBatch AnnotateTransitions(const std::vector<Transition>& input,
                                    const Annotator& a, int n_descriptions,
                                    int concurrency) {
  std::vector<Transition> transitions(input.size());
  std::vector<std::vector<ChangeDescription>> cands(input.size());
  ParallelFor(input.size(), concurrency, [&](std::size_t i) {
    Transition t = input[i];
    auto [action, change] = AnnotateActionAndChange(t, a);
    if (!t.high_action) t.high_action = std::move(action);
    cands[i] = GenerateDescriptions(t, a, n_descriptions);
    transitions[i] = std::move(t);
  });
  AnnotationBatch out;
  out.transitions = std::move(transitions);
  for (auto& c : cands) {
    out.descriptions.insert(out.descriptions.end(),
                            std::make_move_iterator(c.begin()),
                            std::make_move_iterator(c.end()));
  }
  std::stable_sort(out.transitions.begin(), out.transitions.end(),
                   [](const Transition& x, const Transition& y) {
                     return x.id < y.id;
                   });
  std::stable_sort(out.descriptions.begin(), out.descriptions.end(),
                   [](const ChangeDescription& x, const ChangeDescription& y) {
                     return std::tie(x.transition_id, x.candidate_index) <
                            std::tie(y.transition_id, y.candidate_index);
                   });
  spdlog::info("annotate: {} transitions, {} description candidates",
               out.transitions.size(), out.descriptions.size());
  return out;
}

std::vector<QAPair> GenerateQaBatch(const std::vector<Transition>& input,
                                    const Annotator& a, int concurrency) {
  std::vector<std::vector<QAPair>> per(input.size());
  ParallelFor(input.size(), concurrency, [&](std::size_t i) {
    per[i] = GenerateQaCandidates(input[i], a);
  });
  std::vector<QAPair> out;
  for (auto& p : per) {
    out.insert(out.end(), std::make_move_iterator(p.begin()),
               std::make_move_iterator(p.end()));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const QAPair& x, const QAPair& y) { return x.id < y.id; });
  spdlog::info("qa-gen: {} transitions, {} QA candidates", input.size(),
               out.size());
  return out;
}

}  // namespace semwm::annotate

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

#include "semwm/filter/filter.h"

#include <algorithm>
#include <cctype>
#include <set>

#include <spdlog/spdlog.h>

#include "semwm/annotate/parse.h"
#include "semwm/annotate/prompts.h"
#include "semwm/core/error.h"
#include "semwm/core/parallel.h"
#include "semwm/core/text.h"

namespace semwm::filter {
namespace {

using annotate::NormalizeAnswer;
using annotate::PromptTemplate;
using annotate::RenderTemplate;
using gateway::ChatRequest;
using gateway::ImageContent;
using gateway::RequestTag;
using nlohmann::json;

ChatRequest WithGroundTruth(const Transition& t, const Judge& j,
                            std::string prompt) {
  return ChatRequest::UserTurn(
      RequestTag::kJudge, std::move(prompt),
      {ImageContent{"image/png", j.images.Load(t.before)},
       ImageContent{"image/png", j.images.Load(t.after)}});
}

const Transition& Lookup(const std::map<std::string, Transition>& by_id,
                         const std::string& id) {
  auto it = by_id.find(id);
  if (it == by_id.end()) {
    throw PreconditionError("unknown transition '" + id + "'");
  }
  return it->second;
}

template <typename Check>
StageReport RunStage(std::string name, std::vector<QAPair>& qas,
                     bool (*in_input)(const QAPair&), Flag QaFlags::*flag,
                     const std::map<std::string, Transition>& by_id,
                     int concurrency, Check check) {
  std::vector<std::size_t> todo;
  StageReport report;
  report.stage = std::move(name);
  for (std::size_t i = 0; i < qas.size(); ++i) {
    if (!in_input(qas[i])) continue;
    ++report.input;
    if (qas[i].flags.*flag == Flag::kUnevaluated) {
      Lookup(by_id, qas[i].transition_id);
      todo.push_back(i);
    }
  }
  std::vector<Flag> results(todo.size(), Flag::kUnevaluated);
  std::vector<char> failed(todo.size(), 0);
  ParallelFor(todo.size(), concurrency, [&](std::size_t k) {
    const QAPair& qa = qas[todo[k]];
    try {
      results[k] = FlagOf(check(qa, Lookup(by_id, qa.transition_id)));
    } catch (const gateway::GatewayError& e) {
      spdlog::warn("{}: {} left unevaluated: {}", report.stage, qa.id, e.what());
      failed[k] = 1;
    }
  });
  for (std::size_t k = 0; k < todo.size(); ++k) {
    qas[todo[k]].flags.*flag = results[k];
    report.errors += failed[k];
  }
  for (const QAPair& qa : qas) {
    if (!in_input(qa)) continue;
    switch (qa.flags.*flag) {
      case Flag::kPass: ++report.pass; break;
      case Flag::kFail: ++report.fail; break;
      case Flag::kUnevaluated: ++report.unevaluated; break;
    }
  }
  spdlog::info("{}: input {} pass {} fail {} unevaluated {}", report.stage,
               report.input, report.pass, report.fail, report.unevaluated);
  return report;
}

bool AllQas(const QAPair&) { return true; }
bool PassedSelfCheck(const QAPair& qa) {
  return qa.flags.self_check_passed == Flag::kPass;
}

std::optional<int> AskIndex(const std::vector<std::string>& texts,
                            const Transition& t, const Judge& j) {
  std::string listing;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i > 0) listing += "\n\n";
    listing += "Candidate " + std::to_string(i + 1) + ": " + texts[i];
  }
  const std::string prompt = RenderTemplate(
      PromptTemplate("select_best"),
      {{"action", ActionText(t)},
       {"n", std::to_string(texts.size())},
       {"candidates", listing}});
  const auto reply = j.gateway.Complete(WithGroundTruth(t, j, prompt));
  auto index = ParseIndexReply(reply.text);
  if (index && *index >= 1 && *index <= static_cast<int>(texts.size())) {
    return *index - 1;
  }
  return std::nullopt;
}

}  // namespace

bool SelfCheck(const QAPair& qa, const Transition& t, const Judge& j) {
  const std::string prompt =
      RenderTemplate(PromptTemplate("self_check"),
                     {{"action", ActionText(t)}, {"question", qa.question}});
  const auto reply = j.gateway.Complete(WithGroundTruth(t, j, prompt));
  const auto answer = NormalizeAnswer(reply.text);
  return answer && *answer == qa.answer;
}

bool RelevanceCheck(const QAPair& qa, const Transition& t, const Judge& j) {
  if (!t.high_action) {
    throw PreconditionError("relevance check needs a high-level action for " +
                            t.id);
  }
  const std::string prompt = RenderTemplate(
      PromptTemplate("relevance"),
      {{"action", t.high_action->description},
       {"question", qa.question},
       {"answer", qa.answer == Answer::kYes ? "Yes" : "No"}});
  const auto reply = j.gateway.Complete(WithGroundTruth(t, j, prompt));
  return NormalizeAnswer(reply.text) == Answer::kYes;
}

std::optional<int> ParseIndexReply(std::string_view reply) {
  std::size_t i = 0;
  while (i < reply.size() && !std::isdigit(static_cast<unsigned char>(reply[i]))) {
    ++i;
  }
  if (i == reply.size()) return std::nullopt;
  int value = 0;
  while (i < reply.size() && std::isdigit(static_cast<unsigned char>(reply[i]))) {
    value = value * 10 + (reply[i] - '0');
    if (value > 1000000) return std::nullopt;
    ++i;
  }
  return value;
}

std::size_t SelectBestDescription(std::vector<ChangeDescription>& cands,
                                  const Transition& t, const Judge& j) {
  if (cands.empty()) throw PreconditionError("no candidates for " + t.id);
  std::vector<std::string> unique;
  std::vector<std::size_t> first_of;  // unique index -> position in cands
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const std::string norm = NormalizeWhitespace(cands[i].text);
    if (std::find(unique.begin(), unique.end(), norm) == unique.end()) {
      unique.push_back(norm);
      first_of.push_back(i);
    }
  }
  std::size_t chosen = 0;
  if (unique.size() > 1) {
    std::optional<int> pick = AskIndex(unique, t, j);
    if (!pick) pick = AskIndex(unique, t, j);
    if (pick) {
      chosen = first_of[*pick];
    } else {
      spdlog::warn("select-best: {} judge index out of range twice; using "
                   "candidate 0",
                   t.id);
    }
  }
  for (std::size_t i = 0; i < cands.size(); ++i) cands[i].selected = i == chosen;
  return chosen;
}

json ToJson(const StageReport& r) {
  return json{{"stage", r.stage},     {"input", r.input},
              {"pass", r.pass},       {"fail", r.fail},
              {"unevaluated", r.unevaluated}, {"errors", r.errors}};
}

StageReport RunSelfCheckStage(std::vector<QAPair>& qas,
                              const std::map<std::string, Transition>& by_id,
                              const Judge& j, int concurrency) {
  return RunStage("self-check", qas, &AllQas, &QaFlags::self_check_passed,
                  by_id, concurrency,
                  [&](const QAPair& qa, const Transition& t) {
                    return SelfCheck(qa, t, j);
                  });
}

StageReport RunRelevanceStage(std::vector<QAPair>& qas,
                              const std::map<std::string, Transition>& by_id,
                              const Judge& j, int concurrency) {
  return RunStage("relevance", qas, &PassedSelfCheck,
                  &QaFlags::relevance_passed, by_id, concurrency,
                  [&](const QAPair& qa, const Transition& t) {
                    return RelevanceCheck(qa, t, j);
                  });
}

std::vector<ChangeDescription> RunSelectBestStage(
    std::vector<ChangeDescription> descriptions,
    const std::map<std::string, Transition>& by_id, const Judge& j,
    int concurrency) {
  std::stable_sort(descriptions.begin(), descriptions.end(),
                   [](const ChangeDescription& x, const ChangeDescription& y) {
                     return std::tie(x.transition_id, x.candidate_index) <
                            std::tie(y.transition_id, y.candidate_index);
                   });
  std::vector<std::vector<ChangeDescription>> groups;
  for (ChangeDescription& d : descriptions) {
    if (groups.empty() || groups.back().front().transition_id != d.transition_id) {
      groups.emplace_back();
    }
    groups.back().push_back(std::move(d));
  }
  ParallelFor(groups.size(), concurrency, [&](std::size_t g) {
    SelectBestDescription(groups[g],
                          Lookup(by_id, groups[g].front().transition_id), j);
  });
  std::vector<ChangeDescription> out;
  for (auto& g : groups) {
    out.insert(out.end(), std::make_move_iterator(g.begin()),
               std::make_move_iterator(g.end()));
  }
  return out;
}

std::string_view ToString(VerdictKind k) {
  switch (k) {
    case VerdictKind::kQa: return "qa";
    case VerdictKind::kAmbiguity: return "ambiguity";
    case VerdictKind::kFull: break;
  }
  return "full";
}

std::optional<VerdictKind> VerdictKindFromString(std::string_view s) {
  if (s == "qa") return VerdictKind::kQa;
  if (s == "ambiguity") return VerdictKind::kAmbiguity;
  if (s == "full") return VerdictKind::kFull;
  return std::nullopt;
}

void HumanVerdict::Validate() const {
  if (qa_id.empty()) throw ParseError("verdict without qa_id");
  const bool needs_qa = kind != VerdictKind::kAmbiguity;
  const bool needs_amb = kind != VerdictKind::kQa;
  if (needs_qa && (!answer || !relevant)) {
    throw ParseError("verdict for " + qa_id + " needs answer and relevant");
  }
  if (needs_amb && !unambiguous) {
    throw ParseError("verdict for " + qa_id + " needs unambiguous");
  }
}

void to_json(json& j, const HumanVerdict& v) {
  j = json{{"qa_id", v.qa_id}, {"kind", ToString(v.kind)}};
  if (v.answer) j["answer"] = ToString(*v.answer);
  if (v.relevant) j["relevant"] = *v.relevant;
  if (v.unambiguous) j["unambiguous"] = *v.unambiguous;
  if (!v.idempotency_key.empty()) j["idempotency_key"] = v.idempotency_key;
}

void from_json(const json& j, HumanVerdict& v) {
  if (!j.is_object()) throw ParseError("verdict must be an object");
  v.qa_id = j.value("qa_id", "");
  auto kind = VerdictKindFromString(j.value("kind", "full"));
  if (!kind) throw ParseError("unknown verdict kind");
  v.kind = *kind;
  v.answer.reset();
  v.relevant.reset();
  v.unambiguous.reset();
  if (j.contains("answer") && !j["answer"].is_null()) {
    auto a = AnswerFromString(ToLower(j["answer"].get<std::string>()));
    if (!a) throw ParseError("verdict answer must be yes or no");
    v.answer = *a;
  }
  if (j.contains("relevant") && !j["relevant"].is_null()) {
    v.relevant = j["relevant"].get<bool>();
  }
  if (j.contains("unambiguous") && !j["unambiguous"].is_null()) {
    v.unambiguous = j["unambiguous"].get<bool>();
  }
  v.idempotency_key = j.value("idempotency_key", "");
  v.Validate();
}

IngestResult IngestHumanVerdicts(std::vector<QAPair> qas,
                                 const std::vector<HumanVerdict>& verdicts) {
  IngestResult out;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < qas.size(); ++i) index[qas[i].id] = i;
  std::set<std::pair<std::string, VerdictKind>> seen;
  for (const HumanVerdict& v : verdicts) {
    v.Validate();
    auto it = index.find(v.qa_id);
    if (it == index.end()) {
      throw PreconditionError("verdict for unknown QA id '" + v.qa_id + "'");
    }
    QAPair& qa = qas[it->second];
    const std::vector<VerdictKind> parts =
        v.kind == VerdictKind::kFull
            ? std::vector<VerdictKind>{VerdictKind::kQa, VerdictKind::kAmbiguity}
            : std::vector<VerdictKind>{v.kind};
    for (VerdictKind part : parts) {
      if (!seen.insert({v.qa_id, part}).second) {
        out.warnings.push_back("duplicate " + std::string(ToString(part)) +
                               " verdict for " + v.qa_id + "; latest wins");
        spdlog::warn("{}", out.warnings.back());
      }
      if (part == VerdictKind::kQa) {
        qa.flags.human_correct = FlagOf(*v.answer == qa.answer);
        qa.flags.human_relevant = FlagOf(*v.relevant);
      } else {
        qa.flags.human_unambiguous = FlagOf(*v.unambiguous);
      }
    }
  }
  out.report.stage = "human";
  out.report.input = static_cast<int>(qas.size());
  for (const QAPair& qa : qas) {
    const Flag fs[] = {qa.flags.human_correct, qa.flags.human_relevant,
                       qa.flags.human_unambiguous};
    if (std::any_of(std::begin(fs), std::end(fs),
                    [](Flag f) { return f == Flag::kFail; })) {
      ++out.report.fail;
    } else if (std::all_of(std::begin(fs), std::end(fs),
                           [](Flag f) { return f == Flag::kPass; })) {
      ++out.report.pass;
      out.survivors.push_back(qa);
    } else {
      ++out.report.unevaluated;
    }
  }
  out.qas = std::move(qas);
  return out;
}

std::map<std::string, Transition> IndexById(const std::vector<Transition>& ts) {
  std::map<std::string, Transition> out;
  for (const Transition& t : ts) out.emplace(t.id, t);
  return out;
}

}  // namespace semwm::filter

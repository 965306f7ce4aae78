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

#include "semwm/svc/service.h"

#include <algorithm>
#include <fstream>

#include <spdlog/spdlog.h>

#include "semwm/core/error.h"
#include "semwm/core/files.h"

namespace semwm::svc {
namespace {

using filter::HumanVerdict;
using filter::VerdictKind;
using nlohmann::json;

Response ErrorResponse(int status, const std::string& message) {
  return Response{status, json{{"error", message}}};
}

std::vector<VerdictKind> Parts(VerdictKind k) {
  if (k == VerdictKind::kFull) return {VerdictKind::kQa, VerdictKind::kAmbiguity};
  return {k};
}

std::optional<VerdictKind> QueueKind(std::string_view kind) {
  if (kind == "qa") return VerdictKind::kQa;
  if (kind == "ambiguity") return VerdictKind::kAmbiguity;
  return std::nullopt;
}

// Converts the UI body into a verdict; "ambiguous" is the UI's polarity.
HumanVerdict VerdictFromBody(const std::string& qa_id, const json& body) {
  if (!body.is_object()) throw ParseError("verdict body must be an object");
  json v = json::object();
  v["qa_id"] = qa_id;
  const bool has_qa = body.contains("answer") || body.contains("relevant");
  const bool has_amb = body.contains("ambiguous");
  std::string kind = body.value("kind", "");
  if (kind.empty()) kind = has_qa && has_amb ? "full" : has_amb ? "ambiguity" : "qa";
  v["kind"] = kind;
  if (body.contains("answer")) v["answer"] = body["answer"];
  if (body.contains("relevant")) v["relevant"] = body["relevant"];
  if (has_amb) {
    if (!body["ambiguous"].is_boolean()) {
      throw ParseError("'ambiguous' must be a boolean");
    }
    v["unambiguous"] = !body["ambiguous"].get<bool>();
  }
  if (body.contains("idempotency_key")) {
    v["idempotency_key"] = body["idempotency_key"];
  }
  try {
    return v.get<HumanVerdict>();
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

std::vector<JsonlRecord> ReplayLog(const std::filesystem::path& path) {
  std::vector<JsonlRecord> out;
  if (!std::filesystem::exists(path)) return out;
  const std::string text = ReadFileText(path);
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', start);
    const bool complete = nl != std::string::npos;
    const std::string line =
        text.substr(start, complete ? nl - start : std::string::npos);
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      try {
        out.push_back({line_no, json::parse(line)});
      } catch (const json::parse_error& e) {
        if (complete) {
          throw ParseError(path.filename().string() + ": corrupt record: " +
                               e.what(),
                           line_no);
        }
        spdlog::warn("{}: dropping torn final line {}", path.string(), line_no);
        std::filesystem::resize_file(path, start);
        break;
      }
    }
    if (!complete) {
      // A complete record without its newline: terminate it so the next
      // append starts on a fresh line.
      std::ofstream(path, std::ios::binary | std::ios::app) << '\n';
      break;
    }
    start = nl + 1;
  }
  return out;
}

ServiceCore::ServiceCore(ServiceConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.elo.Validate();
  const auto& dir = cfg_.data_dir;
  for (Transition& t : LoadTransitions(dir / "transitions.jsonl")) {
    for (const Screenshot* s : {&t.before, &t.after}) {
      images_[s->sha256] = dir / s->image_ref;
    }
    const std::string id = t.id;
    transitions_.emplace(id, std::move(t));
  }
  if (std::filesystem::exists(dir / "qa_pairs.jsonl")) {
    for (QAPair& qa : LoadQaPairs(dir / "qa_pairs.jsonl")) {
      if (!transitions_.contains(qa.transition_id)) {
        throw ParseError("QA " + qa.id + " references unknown transition " +
                         qa.transition_id);
      }
      if (qa.flags.self_check_passed == Flag::kPass &&
          qa.flags.relevance_passed == Flag::kPass) {
        reviewable_ids_.push_back(qa.id);
      }
      const std::string id = qa.id;
      qas_.emplace(id, std::move(qa));
    }
  }
  std::sort(reviewable_ids_.begin(), reviewable_ids_.end());
  if (std::filesystem::exists(dir / "qualification.jsonl")) {
    for (const JsonlRecord& r : ReadJsonl(dir / "qualification.jsonl")) {
      const std::string id = r.value.at("qa_id").get<std::string>();
      if (!qas_.contains(id)) {
        throw ParseError("qualification QA " + id + " is unknown", r.line);
      }
      qualification_ids_.push_back(id);
    }
    std::sort(qualification_ids_.begin(), qualification_ids_.end());
  }
  for (bool qual : {false, true}) {
    const auto path = dir / (qual ? "qualification_verdicts.jsonl" : "verdicts.jsonl");
    for (const JsonlRecord& r : ReplayLog(path)) {
      HumanVerdict v;
      try {
        v = r.value.get<HumanVerdict>();
      } catch (const std::exception& e) {
        throw ParseError(path.filename().string() + ": " + e.what(), r.line);
      }
      if (!qas_.contains(v.qa_id)) {
        throw ParseError("verdict for unknown QA " + v.qa_id, r.line);
      }
      ApplyVerdict(v, qual);
    }
    (qual ? qual_log_ : verdict_log_) = std::make_unique<JsonlAppender>(path);
  }
  for (const JsonlRecord& r : ReplayLog(dir / "matches.jsonl")) {
    arena::MatchRecord m;
    try {
      m = r.value.get<arena::MatchRecord>();
    } catch (const std::exception& e) {
      throw ParseError(std::string("matches.jsonl: ") + e.what(), r.line);
    }
    ApplyMatch(m, r.line);
  }
  match_log_ = std::make_unique<JsonlAppender>(dir / "matches.jsonl");
  spdlog::info("service: {} transitions, {} reviewable QAs, {} verdicts, {} "
               "matches",
               transitions_.size(), reviewable_ids_.size(), verdicts_.size(),
               matches_.size());
}

void ServiceCore::ApplyVerdict(const HumanVerdict& v, bool qualification) {
  if (!v.idempotency_key.empty()) {
    idempotency_.emplace((qualification ? "q:" : "") + v.qa_id,
                         v.idempotency_key);
  }
  auto& done = qualification ? qual_done_ : done_;
  for (VerdictKind part : Parts(v.kind)) done.emplace(v.qa_id, part);
  if (!qualification && v.kind != VerdictKind::kAmbiguity) {
    qa_part_passed_[v.qa_id] = *v.answer == qas_.at(v.qa_id).answer && *v.relevant;
  }
  (qualification ? qualification_verdicts_ : verdicts_).push_back(v);
}

void ServiceCore::ApplyMatch(const arena::MatchRecord& m, int line) {
  auto it = match_index_.find(m.match_id);
  if (it == match_index_.end()) {
    match_index_[m.match_id] = matches_.size();
    matches_.push_back(m);
    return;
  }
  arena::MatchRecord& existing = matches_[it->second];
  if (existing.decided()) {
    spdlog::warn("matches.jsonl line {}: {} already decided; ignored", line,
                 m.match_id);
    return;
  }
  existing.winner = m.winner;
}

bool ServiceCore::Pending(const QAPair& qa, std::string_view kind,
                          bool qualification) const {
  const VerdictKind part = *QueueKind(kind);
  if ((qualification ? qual_done_ : done_).contains({qa.id, part})) return false;
  if (part == VerdictKind::kAmbiguity && !qualification) {
    auto it = qa_part_passed_.find(qa.id);
    return it != qa_part_passed_.end() && it->second;
  }
  return true;
}

json ServiceCore::ImageRef(const Screenshot& s) const {
  return json{{"sha256", s.sha256},
              {"url", "/api/images/" + s.sha256},
              {"width", s.width},
              {"height", s.height}};
}

json ServiceCore::TaskPayload(const QAPair& qa, std::string_view kind) const {
  const Transition& t = transitions_.at(qa.transition_id);
  return json{{"task_id", qa.id},
              {"kind", kind},
              {"question", qa.question},
              {"answer", ToString(qa.answer)},
              {"action", ActionText(t)},
              {"goal", t.goal},
              {"transition_id", t.id},
              {"before", ImageRef(t.before)},
              {"after", ImageRef(t.after)}};
}

Response ServiceCore::NextReview(std::string_view kind, bool qualification) {
  if (!QueueKind(kind)) return ErrorResponse(400, "kind must be 'qa' or 'ambiguity'");
  std::lock_guard<std::mutex> lock(mu_);
  const auto& ids = qualification ? qualification_ids_ : reviewable_ids_;
  std::string& cursor =
      cursors_[std::string(qualification ? "q:" : "") + std::string(kind)];
  // Next pending id strictly after the cursor, wrapping around.
  auto start = std::upper_bound(ids.begin(), ids.end(), cursor);
  for (std::size_t n = 0; n < ids.size(); ++n) {
    auto it = start + static_cast<std::ptrdiff_t>(n);
    if (it >= ids.end()) it -= static_cast<std::ptrdiff_t>(ids.size());
    const QAPair& qa = qas_.at(*it);
    if (Pending(qa, kind, qualification)) {
      cursor = qa.id;
      return Response{200, TaskPayload(qa, kind)};
    }
  }
  return Response{204, nullptr};
}

Response ServiceCore::SubmitVerdict(const std::string& qa_id, const json& body,
                                    bool qualification) {
  HumanVerdict v;
  try {
    v = VerdictFromBody(qa_id, body);
  } catch (const ParseError& e) {
    return ErrorResponse(422, e.what());
  }
  std::lock_guard<std::mutex> lock(mu_);
  const auto& ids = qualification ? qualification_ids_ : reviewable_ids_;
  if (!std::binary_search(ids.begin(), ids.end(), qa_id)) {
    return ErrorResponse(404, "unknown review task " + qa_id);
  }
  if (!v.idempotency_key.empty() &&
      idempotency_.contains(
          {(qualification ? "q:" : "") + qa_id, v.idempotency_key})) {
    return Response{200, json{{"status", "duplicate"}, {"task_id", qa_id}}};
  }
  if (!qualification && v.kind == VerdictKind::kAmbiguity) {
    auto it = qa_part_passed_.find(qa_id);
    if (it == qa_part_passed_.end() || !it->second) {
      return ErrorResponse(409, "ambiguity review requires a passing QA verdict first");
    }
  }
  (qualification ? qual_log_ : verdict_log_)->Append(json(v));
  ApplyVerdict(v, qualification);
  return Response{200, json{{"status", "recorded"}, {"task_id", qa_id}}};
}

Response ServiceCore::NextMatch() {
  std::lock_guard<std::mutex> lock(mu_);
  if (matches_.empty()) return Response{204, nullptr};
  std::size_t start = 0;
  if (auto it = match_index_.find(match_cursor_); it != match_index_.end()) {
    start = it->second + 1;
  }
  for (std::size_t n = 0; n < matches_.size(); ++n) {
    const arena::MatchRecord& m = matches_[(start + n) % matches_.size()];
    if (m.decided()) continue;
    match_cursor_ = m.match_id;
    const bool a_left = m.left == arena::Side::kA;
    json body{{"match_id", m.match_id},
              {"item_id", m.item_id},
              {"left", a_left ? m.output_a : m.output_b},
              {"right", a_left ? m.output_b : m.output_a},
              {"allow_ties", cfg_.allow_ties}};
    if (auto t = transitions_.find(m.item_id); t != transitions_.end()) {
      body["goal"] = t->second.goal;
      body["action"] = ActionText(t->second);
      body["before"] = ImageRef(t->second.before);
      body["after"] = ImageRef(t->second.after);
    }
    return Response{200, body};
  }
  return Response{204, nullptr};
}

Response ServiceCore::SubmitMatchResult(const std::string& match_id,
                                        const json& body) {
  if (!body.is_object() || !body.contains("winner") ||
      !body["winner"].is_string()) {
    return ErrorResponse(400, "body needs a string 'winner'");
  }
  const std::string w = body["winner"].get<std::string>();
  std::lock_guard<std::mutex> lock(mu_);
  auto it = match_index_.find(match_id);
  if (it == match_index_.end()) return ErrorResponse(404, "unknown match " + match_id);
  arena::MatchRecord m = matches_[it->second];
  if (m.decided()) return ErrorResponse(409, "match " + match_id + " already decided");
  const bool a_left = m.left == arena::Side::kA;
  if (w == "a") {
    m.winner = arena::Winner::kA;
  } else if (w == "b") {
    m.winner = arena::Winner::kB;
  } else if (w == "left") {
    m.winner = a_left ? arena::Winner::kA : arena::Winner::kB;
  } else if (w == "right") {
    m.winner = a_left ? arena::Winner::kB : arena::Winner::kA;
  } else if (w == "tie") {
    if (!cfg_.allow_ties) return ErrorResponse(422, "ties are disabled");
    m.winner = arena::Winner::kTie;
  } else {
    return ErrorResponse(400, "winner must be a, b, left, right or tie");
  }
  match_log_->Append(json(m));
  matches_[it->second].winner = m.winner;
  return Response{200, json{{"status", "recorded"},
                            {"match_id", match_id},
                            {"winner", m.winner == arena::Winner::kTie
                                           ? "tie"
                                           : (m.winner == arena::Winner::kA
                                                  ? m.model_a
                                                  : m.model_b)}}};
}

Response ServiceCore::Elo() {
  std::vector<arena::MatchRecord> decided;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& m : matches_) {
      if (m.decided()) decided.push_back(m);
    }
  }
  json out = json::object();
  if (decided.empty()) return Response{200, out};
  for (const auto& [model, rating] : arena::ComputeElo(decided, cfg_.elo)) {
    out[model] = rating.mean;
  }
  return Response{200, out};
}

Response ServiceCore::Settings() const {
  return Response{200, json{{"allow_ties", cfg_.allow_ties},
                            {"k_factor", cfg_.elo.k_factor},
                            {"permutations", cfg_.elo.permutations}}};
}

std::optional<std::vector<std::uint8_t>> ServiceCore::Image(
    const std::string& sha256) const {
  auto it = images_.find(sha256);
  if (it == images_.end()) return std::nullopt;
  return ReadFileBytes(it->second);
}

std::vector<HumanVerdict> ServiceCore::Verdicts() const {
  std::lock_guard<std::mutex> lock(mu_);
  return verdicts_;
}

std::vector<arena::MatchRecord> ServiceCore::Matches() const {
  std::lock_guard<std::mutex> lock(mu_);
  return matches_;
}

}  // namespace semwm::svc

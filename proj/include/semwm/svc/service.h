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

#ifndef SEMWM_SVC_SERVICE_H_
#define SEMWM_SVC_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semwm/arena/arena.h"
#include "semwm/core/jsonl.h"
#include "semwm/core/types.h"
#include "semwm/filter/filter.h"

namespace semwm::svc {

// Data directory layout:
//   transitions.jsonl            required; screenshots beside it
//   qa_pairs.jsonl               QAs that passed both VLM stages are reviewed
//   qualification.jsonl          optional {"qa_id"} lines for the
//                                qualification queue
//   verdicts.jsonl               append-only human verdicts
//   qualification_verdicts.jsonl append-only, kept apart from real verdicts
//   matches.jsonl                append-only match records
struct ServiceConfig {
  std::filesystem::path data_dir;
  bool allow_ties = false;
  arena::EloConfig elo;
};

struct Response {
  int status = 200;
  nlohmann::json body;  // null for 204
};

// Reads a JSONL log written by appenders. A final line without a newline
// that does not parse is a torn write: it is dropped with a warning and the
// file is truncated to the last complete record. Any other bad line is a
// ParseError.
std::vector<JsonlRecord> ReplayLog(const std::filesystem::path& path);

// HTTP-independent service state. Every mutation is appended to its log
// before it is applied in memory, so replaying the logs on startup
// reconstructs the same state. Thread-safe.
class ServiceCore {
 public:
  explicit ServiceCore(ServiceConfig cfg);

  // kind is "qa" or "ambiguity". Repeated calls without verdicts cycle
  // through the queue. 204 when the queue is empty.
  Response NextReview(std::string_view kind, bool qualification = false);
  // Body: {answer?, relevant?, ambiguous?, kind?, idempotency_key?}.
  Response SubmitVerdict(const std::string& qa_id, const nlohmann::json& body,
                         bool qualification = false);

  // Blinded: outputs appear as left/right, model names are withheld.
  Response NextMatch();
  // Body: {winner: "a" | "b" | "left" | "right" | "tie"}.
  Response SubmitMatchResult(const std::string& match_id,
                             const nlohmann::json& body);
  // {"model": mean rating} over decided matches.
  Response Elo();
  Response Settings() const;

  std::optional<std::vector<std::uint8_t>> Image(const std::string& sha256) const;

  // Current verdicts in log order (after idempotent de-duplication).
  std::vector<filter::HumanVerdict> Verdicts() const;
  std::vector<arena::MatchRecord> Matches() const;

 private:
  nlohmann::json TaskPayload(const QAPair& qa, std::string_view kind) const;
  nlohmann::json ImageRef(const Screenshot& s) const;
  void ApplyVerdict(const filter::HumanVerdict& v, bool qualification);
  void ApplyMatch(const arena::MatchRecord& m, int line);
  bool Pending(const QAPair& qa, std::string_view kind, bool qualification) const;

  ServiceConfig cfg_;
  mutable std::mutex mu_;
  std::map<std::string, Transition> transitions_;
  std::map<std::string, std::filesystem::path> images_;  // sha -> file
  std::map<std::string, QAPair> qas_;       // every QA in qa_pairs.jsonl
  std::vector<std::string> reviewable_ids_;  // passed both VLM stages
  std::vector<std::string> qualification_ids_;
  std::vector<filter::HumanVerdict> verdicts_;
  std::vector<filter::HumanVerdict> qualification_verdicts_;
  // (qa id, part) reviewed, per queue.
  std::set<std::pair<std::string, filter::VerdictKind>> done_, qual_done_;
  std::map<std::string, bool> qa_part_passed_;  // latest answer+relevance
  std::set<std::pair<std::string, std::string>> idempotency_;
  std::map<std::string, std::string> cursors_;  // queue name -> last id
  std::vector<arena::MatchRecord> matches_;
  std::map<std::string, std::size_t> match_index_;
  std::string match_cursor_;
  std::unique_ptr<JsonlAppender> verdict_log_, qual_log_, match_log_;
};

}  // namespace semwm::svc

#endif  // SEMWM_SVC_SERVICE_H_

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

#include "semwm/gateway/scripted.h"

#include "semwm/core/jsonl.h"

namespace semwm::gateway {

Matcher AnyRequest() {
  return [](const ChatRequest&) { return true; };
}

Matcher TagIs(RequestTag tag) {
  return [tag](const ChatRequest& req) { return req.tag == tag; };
}

Matcher PromptContains(std::string needle) {
  return [needle = std::move(needle)](const ChatRequest& req) {
    for (const ChatMessage& m : req.messages) {
      if (m.text.find(needle) != std::string::npos) return true;
    }
    return false;
  };
}

Matcher AllOf(std::vector<Matcher> matchers) {
  return [matchers = std::move(matchers)](const ChatRequest& req) {
    for (const Matcher& m : matchers) {
      if (!m(req)) return false;
    }
    return true;
  };
}

ScriptEntry ScriptEntry::Reply(Matcher m, std::string text, bool repeat) {
  ScriptEntry e;
  e.matcher = std::move(m);
  e.respond = [text = std::move(text)](const ChatRequest&) { return text; };
  e.repeat = repeat;
  return e;
}

ScriptEntry ScriptEntry::Dynamic(Matcher m, Responder r, bool repeat) {
  ScriptEntry e;
  e.matcher = std::move(m);
  e.respond = std::move(r);
  e.repeat = repeat;
  return e;
}

ScriptedGateway::ScriptedGateway(std::vector<ScriptEntry> script,
                                 GatewayConfig cfg, AuditLog* audit)
    : script_(std::move(script)),
      used_(script_.size(), false),
      cfg_(std::move(cfg)),
      audit_(audit) {
  if (script_.empty()) throw PreconditionError("script must not be empty");
  cfg_.Validate();
}

ChatResponse ScriptedGateway::Complete(const ChatRequest& req) {
  // Validates the request the same way the wire path does.
  BuildWirePayload(req, cfg_, /*inline_images=*/false);
  const ScriptEntry* entry = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
    bool any_left = false;
    for (std::size_t i = 0; i < script_.size(); ++i) {
      if (used_[i]) continue;
      if (!script_[i].repeat) any_left = true;
      if (!script_[i].matcher(req)) continue;
      if (!script_[i].repeat) used_[i] = true;
      entry = &script_[i];
      break;
    }
    if (entry == nullptr) {
      const std::string head = req.AllText().substr(0, 80);
      throw ScriptError(std::string(any_left ? "unmatched request"
                                             : "script exhausted") +
                        " (tag " + std::string(ToString(req.tag)) + "): " +
                        head);
    }
  }
  if (audit_ != nullptr) audit_->RecordAttempt(req, cfg_, 1);
  if (entry->fail) {
    throw GatewayError(GatewayError::Kind::kRetriesExhausted,
                       "scripted failure" +
                           (entry->label.empty() ? "" : " (" + entry->label + ")"));
  }
  ChatResponse response;
  response.text = entry->respond ? entry->respond(req) : std::string();
  if (response.text.empty()) {
    throw GatewayError(GatewayError::Kind::kMissingText,
                       "scripted response has no text");
  }
  return response;
}

std::size_t ScriptedGateway::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

std::size_t ScriptedGateway::remaining() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::size_t n = 0;
  for (std::size_t i = 0; i < script_.size(); ++i) {
    if (!used_[i] && !script_[i].repeat) ++n;
  }
  return n;
}

std::vector<ScriptEntry> LoadScript(const std::filesystem::path& path) {
  std::vector<ScriptEntry> out;
  for (const JsonlRecord& record : ReadJsonl(path)) {
    const nlohmann::json& j = record.value;
    if (!j.is_object()) throw ParseError("script entry must be an object", record.line);
    std::vector<Matcher> matchers;
    if (j.contains("tag")) {
      auto tag = RequestTagFromString(j["tag"].get<std::string>());
      if (!tag) throw ParseError("unknown tag in script", record.line);
      matchers.push_back(TagIs(*tag));
    }
    if (j.contains("contains")) {
      matchers.push_back(PromptContains(j["contains"].get<std::string>()));
    }
    ScriptEntry e;
    e.label = j.value("label", "line " + std::to_string(record.line));
    e.matcher = matchers.empty() ? AnyRequest() : AllOf(std::move(matchers));
    e.repeat = j.value("repeat", false);
    e.fail = j.value("fail", false);
    if (!e.fail) {
      if (!j.contains("response") || !j["response"].is_string()) {
        throw ParseError("script entry needs a string 'response'", record.line);
      }
      e.respond = [text = j["response"].get<std::string>()](const ChatRequest&) {
        return text;
      };
    }
    out.push_back(std::move(e));
  }
  if (out.empty()) throw ParseError("script " + path.string() + " is empty");
  return out;
}

}  // namespace semwm::gateway

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

#include "semwm/policy/environment.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

#include "semwm/core/error.h"
#include "semwm/core/files.h"
#include "semwm/core/hash.h"
#include "semwm/core/text.h"
#include "semwm/overlay/image.h"

namespace semwm::policy {
namespace {

using nlohmann::json;

std::string RequireString(const json& j, const char* key,
                          const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(where + ": missing string '" + key + "'");
  }
  return j[key].get<std::string>();
}

}  // namespace

std::vector<FsmTask> ParseFsmTasks(const json& doc) {
  if (!doc.is_object() || !doc.contains("tasks") || !doc["tasks"].is_array()) {
    throw ParseError("task file needs a 'tasks' array");
  }
  std::vector<FsmTask> out;
  std::set<std::string> ids;
  for (const json& jt : doc["tasks"]) {
    FsmTask t;
    t.id = RequireString(jt, "id", "task");
    const std::string where = "task " + t.id;
    if (!ids.insert(t.id).second) throw ParseError("duplicate " + where);
    t.goal = RequireString(jt, "goal", where);
    t.start = RequireString(jt, "start", where);
    t.max_steps = jt.value("max_steps", 20);
    if (t.max_steps < 1) throw ParseError(where + ": max_steps must be >= 1");
    for (const json& a : jt.at("accept")) t.accept.push_back(a.get<std::string>());
    for (const json& js : jt.at("screens")) {
      FsmScreen s;
      s.id = RequireString(js, "id", where + " screen");
      s.hints = js.value("hints", "");
      s.width = js.value("width", s.width);
      s.height = js.value("height", s.height);
      if (s.width <= 0 || s.height <= 0) {
        throw ParseError(where + ": screen " + s.id + " has bad dimensions");
      }
      if (!t.screens.emplace(s.id, s).second) {
        throw ParseError(where + ": duplicate screen " + s.id);
      }
    }
    for (const json& je : jt.value("edges", json::array())) {
      FsmEdge e{RequireString(je, "from", where + " edge"),
                RequireString(je, "action", where + " edge"),
                RequireString(je, "to", where + " edge")};
      for (const std::string* s : {&e.from, &e.to}) {
        if (!t.screens.contains(*s)) {
          throw ParseError(where + ": edge references unknown screen " + *s);
        }
      }
      t.edges.push_back(std::move(e));
    }
    if (!t.screens.contains(t.start)) {
      throw ParseError(where + ": unknown start screen " + t.start);
    }
    for (const std::string& a : t.accept) {
      if (!t.screens.contains(a)) {
        throw ParseError(where + ": unknown accepting screen " + a);
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<FsmTask> LoadFsmTasks(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(ReadFileText(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return ParseFsmTasks(doc);
}

std::string NormalizeActionLabel(std::string_view text) {
  std::string s = ToLower(NormalizeWhitespace(text));
  while (!s.empty() && std::ispunct(static_cast<unsigned char>(s.back())) &&
         s.back() != '\'' && s.back() != '"' && s.back() != ')') {
    s.pop_back();
  }
  return s;
}

FsmEnvironment::FsmEnvironment(std::vector<FsmTask> tasks) {
  for (FsmTask& t : tasks) {
    const std::string id = t.id;
    tasks_.emplace(id, std::move(t));
  }
}

EnvObservation FsmEnvironment::Reset(const std::string& task_id) {
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) throw PreconditionError("unknown task " + task_id);
  task_ = &it->second;
  screen_ = task_->start;
  step_ = 0;
  return Observe();
}

EnvObservation FsmEnvironment::Step(const HighLevelAction& action) {
  const FsmTask& t = task();
  if (IsSuccess()) return Observe();
  const std::string label = NormalizeActionLabel(action.description);
  for (const FsmEdge& e : t.edges) {
    if (e.from == screen_ && NormalizeActionLabel(e.action) == label) {
      screen_ = e.to;
      break;
    }
  }
  ++step_;
  return Observe();
}

bool FsmEnvironment::IsSuccess() const {
  const FsmTask& t = task();
  return std::find(t.accept.begin(), t.accept.end(), screen_) != t.accept.end();
}

int FsmEnvironment::MaxSteps() const { return task().max_steps; }

std::string FsmEnvironment::Goal() const { return task().goal; }

const FsmTask& FsmEnvironment::task() const {
  if (task_ == nullptr) throw PreconditionError("environment was not reset");
  return *task_;
}

std::vector<std::string> FsmEnvironment::AvailableActions() const {
  std::vector<std::string> out;
  for (const FsmEdge& e : task().edges) {
    if (e.from == screen_) out.push_back(e.action);
  }
  return out;
}

std::optional<std::string> FsmEnvironment::OracleAction() const {
  const FsmTask& t = task();
  if (IsSuccess()) return std::nullopt;
  // BFS from the current screen, remembering the first action taken.
  std::map<std::string, std::string> first_action;
  std::deque<std::string> frontier{screen_};
  first_action[screen_] = "";
  while (!frontier.empty()) {
    const std::string cur = frontier.front();
    frontier.pop_front();
    for (const FsmEdge& e : t.edges) {
      if (e.from != cur || first_action.contains(e.to)) continue;
      const std::string via = cur == screen_ ? e.action : first_action[cur];
      first_action[e.to] = via;
      if (std::find(t.accept.begin(), t.accept.end(), e.to) != t.accept.end()) {
        return via;
      }
      frontier.push_back(e.to);
    }
  }
  return std::nullopt;
}

EnvObservation FsmEnvironment::Observe() const {
  const FsmTask& t = task();
  const FsmScreen& s = t.screens.at(screen_);
  const std::string digest = Sha256Hex(t.id + "/" + s.id);
  auto byte = [&](int i) {
    return static_cast<std::uint8_t>(
        std::stoi(digest.substr(static_cast<std::size_t>(i) * 2, 2), nullptr, 16));
  };
  overlay::Image image(s.width, s.height, overlay::Rgba{byte(0), byte(1), byte(2), 255});
  // A header band keeps neighbouring screens visually distinct.
  for (int y = 0; y < std::min(s.height, s.height / 8 + 1); ++y) {
    for (int x = 0; x < s.width; ++x) image.Set(x, y, {byte(3), byte(4), byte(5), 255});
  }
  EnvObservation obs;
  obs.png = overlay::EncodePng(image);
  obs.screenshot.image_ref = t.id + "/" + s.id + ".png";
  obs.screenshot.sha256 = Sha256Hex(obs.png);
  obs.screenshot.width = s.width;
  obs.screenshot.height = s.height;
  if (!s.hints.empty()) obs.hints = s.hints;
  obs.step = step_;
  return obs;
}

}  // namespace semwm::policy

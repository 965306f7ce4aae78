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

#include "semwm/core/jsonl.h"

#include <map>
#include <set>
#include <sstream>

#include "semwm/core/files.h"
#include "semwm/core/hash.h"

namespace semwm {
namespace {

using nlohmann::json;

const json& Field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return *it;
}

bool Has(const json& j, const char* key) {
  auto it = j.find(key);
  return it != j.end() && !it->is_null();
}

std::string StringField(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (!v.is_string()) {
    throw ParseError(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

int IntField(const json& j, const char* key) {
  const json& v = Field(j, key);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<int>();
}

Flag FlagField(const json& j, const char* key) {
  if (!Has(j, key)) return Flag::kUnevaluated;
  auto flag = FlagFromString(StringField(j, key));
  if (!flag) throw ParseError(std::string("bad flag value for '") + key + "'");
  return *flag;
}

}  // namespace

void to_json(json& j, const Point& p) { j = json{{"x", p.x}, {"y", p.y}}; }

void from_json(const json& j, Point& p) {
  p.x = IntField(j, "x");
  p.y = IntField(j, "y");
}

void to_json(json& j, const Screenshot& s) {
  j = json{{"image_ref", s.image_ref},
           {"sha256", s.sha256},
           {"width", s.width},
           {"height", s.height}};
}

void from_json(const json& j, Screenshot& s) {
  s.image_ref = StringField(j, "image_ref");
  s.sha256 = StringField(j, "sha256");
  s.width = IntField(j, "width");
  s.height = IntField(j, "height");
}

void to_json(json& j, const LowLevelAction& a) {
  j = json{{"kind", a.KindName()}};
  if (a.point) j["point"] = *a.point;
  if (a.end_point) j["end_point"] = *a.end_point;
  if (a.text) j["text"] = *a.text;
}

void from_json(const json& j, LowLevelAction& a) {
  const std::string kind = StringField(j, "kind");
  a.kind = ActionKindFromString(kind);
  a.other_kind = a.kind == ActionKind::kOther ? kind : std::string();
  a.point = Has(j, "point") ? std::optional<Point>(j.at("point").get<Point>())
                            : std::nullopt;
  a.end_point = Has(j, "end_point")
                    ? std::optional<Point>(j.at("end_point").get<Point>())
                    : std::nullopt;
  a.text = Has(j, "text") ? std::optional<std::string>(StringField(j, "text"))
                          : std::nullopt;
}

void to_json(json& j, const HighLevelAction& a) {
  j = json{{"description", a.description}};
}

void from_json(const json& j, HighLevelAction& a) {
  a.description = StringField(j, "description");
}

void to_json(json& j, const Transition& t) {
  j = json{{"id", t.id},
           {"before", t.before},
           {"after", t.after},
           {"goal", t.goal},
           {"category", ToString(t.category)},
           {"app", t.app},
           {"source", ToString(t.source)}};
  if (t.low_action) j["low_action"] = *t.low_action;
  if (t.high_action) j["high_action"] = *t.high_action;
}

void from_json(const json& j, Transition& t) {
  t.id = StringField(j, "id");
  t.before = Field(j, "before").get<Screenshot>();
  t.after = Field(j, "after").get<Screenshot>();
  t.low_action = Has(j, "low_action") ? std::optional<LowLevelAction>(
                                            j.at("low_action").get<LowLevelAction>())
                                      : std::nullopt;
  t.high_action =
      Has(j, "high_action")
          ? std::optional<HighLevelAction>(
                j.at("high_action").get<HighLevelAction>())
          : std::nullopt;
  t.goal = StringField(j, "goal");
  const std::string category = StringField(j, "category");
  auto parsed_category = CategoryFromString(category);
  if (!parsed_category) throw ParseError("unknown category '" + category + "'");
  t.category = *parsed_category;
  t.app = Has(j, "app") ? StringField(j, "app") : std::string();
  const std::string source = StringField(j, "source");
  auto parsed_source = SourceFromString(source);
  if (!parsed_source) throw ParseError("unknown source '" + source + "'");
  t.source = *parsed_source;
}

void to_json(json& j, const QaFlags& f) {
  j = json{{"self_check_passed", ToString(f.self_check_passed)},
           {"relevance_passed", ToString(f.relevance_passed)},
           {"human_correct", ToString(f.human_correct)},
           {"human_relevant", ToString(f.human_relevant)},
           {"human_unambiguous", ToString(f.human_unambiguous)}};
}

void from_json(const json& j, QaFlags& f) {
  f.self_check_passed = FlagField(j, "self_check_passed");
  f.relevance_passed = FlagField(j, "relevance_passed");
  f.human_correct = FlagField(j, "human_correct");
  f.human_relevant = FlagField(j, "human_relevant");
  f.human_unambiguous = FlagField(j, "human_unambiguous");
}

void to_json(json& j, const QAPair& q) {
  j = json{{"id", q.id},
           {"transition_id", q.transition_id},
           {"question", q.question},
           {"answer", ToString(q.answer)},
           {"flags", q.flags}};
}

void from_json(const json& j, QAPair& q) {
  q.id = StringField(j, "id");
  q.transition_id = StringField(j, "transition_id");
  q.question = StringField(j, "question");
  auto answer = AnswerFromString(StringField(j, "answer"));
  if (!answer) throw ParseError("answer must be 'yes' or 'no'");
  q.answer = *answer;
  q.flags = Has(j, "flags") ? j.at("flags").get<QaFlags>() : QaFlags{};
}

void to_json(json& j, const ChangeDescription& d) {
  j = json{{"transition_id", d.transition_id},
           {"text", d.text},
           {"candidate_index", d.candidate_index},
           {"selected", d.selected}};
}

void from_json(const json& j, ChangeDescription& d) {
  d.transition_id = StringField(j, "transition_id");
  d.text = StringField(j, "text");
  d.candidate_index = IntField(j, "candidate_index");
  d.selected = Has(j, "selected") && Field(j, "selected").get<bool>();
}

std::vector<JsonlRecord> ReadJsonl(const std::filesystem::path& path) {
  std::istringstream in(ReadFileText(path));
  std::vector<JsonlRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out.push_back({line_no, json::parse(line)});
    } catch (const json::parse_error& e) {
      throw ParseError(path.filename().string() + ": invalid JSON: " + e.what(),
                       line_no);
    }
  }
  return out;
}

void WriteJsonl(const std::filesystem::path& path,
                const std::vector<json>& records) {
  std::string text;
  for (const json& record : records) {
    text += record.dump();
    text += '\n';
  }
  WriteFileText(path, text);
}

std::vector<Transition> LoadTransitions(const std::filesystem::path& path) {
  const std::filesystem::path base = path.parent_path();
  std::vector<Transition> out;
  std::set<std::string> seen;
  std::map<std::string, std::string> digests;  // image_ref -> sha256
  for (auto& record : ReadJsonl(path)) {
    Transition t;
    try {
      t = record.value.get<Transition>();
    } catch (const ParseError& e) {
      throw ParseError(e.what(), record.line);
    } catch (const json::exception& e) {
      throw ParseError(e.what(), record.line);
    }
    if (!seen.insert(t.id).second) {
      throw ParseError("duplicate transition id '" + t.id + "'", record.line);
    }
    for (const Screenshot* shot : {&t.before, &t.after}) {
      auto it = digests.find(shot->image_ref);
      if (it == digests.end()) {
        const auto bytes = ReadFileBytes(base / shot->image_ref);
        it = digests.emplace(shot->image_ref, Sha256Hex(bytes)).first;
      }
      if (it->second != shot->sha256) {
        throw HashMismatchError("line " + std::to_string(record.line) +
                                ": screenshot " + shot->image_ref +
                                " does not match its recorded sha256");
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<QAPair> LoadQaPairs(const std::filesystem::path& path) {
  return LoadJsonl<QAPair>(path);
}

std::vector<ChangeDescription> LoadDescriptions(
    const std::filesystem::path& path) {
  return LoadJsonl<ChangeDescription>(path);
}

JsonlAppender::JsonlAppender(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  out_.open(path, std::ios::binary | std::ios::app);
  if (!out_) throw IoError("cannot open " + path.string() + " for append");
}

void JsonlAppender::Append(const json& record) {
  std::string line = record.dump();
  line += '\n';
  std::lock_guard<std::mutex> lock(mu_);
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) throw IoError("append to " + path_.string() + " failed");
}

}  // namespace semwm

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

#ifndef SEMWM_CORE_JSONL_H_
#define SEMWM_CORE_JSONL_H_

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semwm/core/error.h"
#include "semwm/core/types.h"

namespace semwm {

// JSON codecs for the on-disk record types. Field names match the manifest
// schemas; absent optionals are omitted on write and accepted as missing or
// null on read. Decoding failures throw ParseError.
void to_json(nlohmann::json& j, const Point& p);
void from_json(const nlohmann::json& j, Point& p);
void to_json(nlohmann::json& j, const Screenshot& s);
void from_json(const nlohmann::json& j, Screenshot& s);
void to_json(nlohmann::json& j, const LowLevelAction& a);
void from_json(const nlohmann::json& j, LowLevelAction& a);
void to_json(nlohmann::json& j, const HighLevelAction& a);
void from_json(const nlohmann::json& j, HighLevelAction& a);
void to_json(nlohmann::json& j, const Transition& t);
void from_json(const nlohmann::json& j, Transition& t);
void to_json(nlohmann::json& j, const QaFlags& f);
void from_json(const nlohmann::json& j, QaFlags& f);
void to_json(nlohmann::json& j, const QAPair& q);
void from_json(const nlohmann::json& j, QAPair& q);
void to_json(nlohmann::json& j, const ChangeDescription& d);
void from_json(const nlohmann::json& j, ChangeDescription& d);

struct JsonlRecord {
  int line = 0;  // 1-based
  nlohmann::json value;
};

// Parses every non-blank line of a JSONL file. Errors name the 1-based line.
std::vector<JsonlRecord> ReadJsonl(const std::filesystem::path& path);

// Decodes each line of a JSONL file as T; decode errors carry the line number.
template <typename T>
std::vector<T> LoadJsonl(const std::filesystem::path& path) {
  std::vector<T> out;
  for (auto& record : ReadJsonl(path)) {
    try {
      out.push_back(record.value.template get<T>());
    } catch (const ParseError& e) {
      throw ParseError(e.what(), record.line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), record.line);
    }
  }
  return out;
}

// Writes one compact JSON document per line, replacing the file.
void WriteJsonl(const std::filesystem::path& path,
                const std::vector<nlohmann::json>& records);

template <typename T>
void SaveJsonl(const std::filesystem::path& path, const std::vector<T>& items) {
  std::vector<nlohmann::json> records;
  records.reserve(items.size());
  for (const T& item : items) records.emplace_back(item);
  WriteJsonl(path, records);
}

// Loads a transitions manifest. Screenshot paths resolve against the
// manifest's directory and every referenced image is hashed and compared
// with its recorded digest. Duplicate ids are rejected.
std::vector<Transition> LoadTransitions(const std::filesystem::path& path);

std::vector<QAPair> LoadQaPairs(const std::filesystem::path& path);
std::vector<ChangeDescription> LoadDescriptions(
    const std::filesystem::path& path);

// Thread-safe line appender for append-only logs. Each record is written with
// a single write call and flushed before Append returns.
class JsonlAppender {
 public:
  explicit JsonlAppender(const std::filesystem::path& path);

  void Append(const nlohmann::json& record);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace semwm

#endif  // SEMWM_CORE_JSONL_H_

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

#ifndef SEMWM_CORE_CONFIG_H_
#define SEMWM_CORE_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <boost/property_tree/ptree.hpp>

namespace semwm {

// INI-style configuration with [section] headers and key = value pairs.
// Section names may contain ':' (e.g. [gateway:judge]).
class Config {
 public:
  Config() = default;
  static Config Load(const std::filesystem::path& path);
  static Config FromString(const std::string& text);

  bool HasSection(std::string_view section) const;
  std::optional<std::string> Get(std::string_view section,
                                 std::string_view key) const;

  std::string GetString(std::string_view section, std::string_view key,
                        std::string fallback) const;
  int GetInt(std::string_view section, std::string_view key,
             int fallback) const;
  double GetDouble(std::string_view section, std::string_view key,
                   double fallback) const;
  bool GetBool(std::string_view section, std::string_view key,
               bool fallback) const;

 private:
  boost::property_tree::ptree tree_;
};

}  // namespace semwm

#endif  // SEMWM_CORE_CONFIG_H_

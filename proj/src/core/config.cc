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

#include "semwm/core/config.h"

#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "semwm/core/error.h"
#include "semwm/core/files.h"
#include "semwm/core/text.h"

namespace semwm {

Config Config::Load(const std::filesystem::path& path) {
  return FromString(ReadFileText(path));
}

Config Config::FromString(const std::string& text) {
  Config config;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, config.tree_);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError("config: " + e.message(), static_cast<int>(e.line()));
  }
  return config;
}

bool Config::HasSection(std::string_view section) const {
  return tree_.find(std::string(section)) != tree_.not_found();
}

std::optional<std::string> Config::Get(std::string_view section,
                                       std::string_view key) const {
  auto s = tree_.find(std::string(section));
  if (s == tree_.not_found()) return std::nullopt;
  auto k = s->second.find(std::string(key));
  if (k == s->second.not_found()) return std::nullopt;
  return std::string(Trim(k->second.data()));
}

std::string Config::GetString(std::string_view section, std::string_view key,
                              std::string fallback) const {
  return Get(section, key).value_or(std::move(fallback));
}

int Config::GetInt(std::string_view section, std::string_view key,
                   int fallback) const {
  auto v = Get(section, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const int out = std::stoi(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return out;
  } catch (const std::exception&) {
    throw ParseError("config [" + std::string(section) + "] " +
                     std::string(key) + ": expected an integer, got '" + *v +
                     "'");
  }
}

double Config::GetDouble(std::string_view section, std::string_view key,
                         double fallback) const {
  auto v = Get(section, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double out = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return out;
  } catch (const std::exception&) {
    throw ParseError("config [" + std::string(section) + "] " +
                     std::string(key) + ": expected a number, got '" + *v +
                     "'");
  }
}

bool Config::GetBool(std::string_view section, std::string_view key,
                     bool fallback) const {
  auto v = Get(section, key);
  if (!v) return fallback;
  const std::string lower = ToLower(*v);
  if (lower == "true" || lower == "1" || lower == "yes" || lower == "on") {
    return true;
  }
  if (lower == "false" || lower == "0" || lower == "no" || lower == "off") {
    return false;
  }
  throw ParseError("config [" + std::string(section) + "] " +
                   std::string(key) + ": expected a boolean, got '" + *v + "'");
}

}  // namespace semwm

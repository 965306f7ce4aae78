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

#include "semwm/annotate/prompts.h"

#include "semwm/core/assets.h"

namespace semwm::annotate {

std::string RenderTemplate(std::string_view tmpl, const PromptVars& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    const std::string_view rest = tmpl.substr(i);
    if (rest.starts_with("{{")) {
      out += '{';
      i += 2;
      continue;
    }
    if (rest.starts_with("}}")) {
      out += '}';
      i += 2;
      continue;
    }
    if (rest.starts_with("{") || rest.starts_with("[[")) {
      const bool square = rest.front() == '[';
      const std::string_view close = square ? "]]" : "}";
      const std::size_t open_len = square ? 2 : 1;
      const std::size_t end = rest.find(close, open_len);
      if (end != std::string_view::npos) {
        const std::string_view name = rest.substr(open_len, end - open_len);
        if (auto it = vars.find(name); it != vars.end()) {
          out += it->second;
          i += end + close.size();
          continue;
        }
      }
    }
    out += tmpl[i];
    ++i;
  }
  return out;
}

std::string_view PromptTemplate(std::string_view name) {
  return assets::Get("prompts/" + std::string(name) + ".txt");
}

}  // namespace semwm::annotate

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

#ifndef SEMWM_ANNOTATE_PROMPTS_H_
#define SEMWM_ANNOTATE_PROMPTS_H_

#include <map>
#include <string>
#include <string_view>

namespace semwm::annotate {

using PromptVars = std::map<std::string, std::string, std::less<>>;

// Fills {name} and [[Name]] placeholders whose name is in `vars`. Unknown
// placeholders are left as written; "{{" and "}}" become literal braces.
std::string RenderTemplate(std::string_view tmpl, const PromptVars& vars);

// Shipped template "prompts/<name>.txt".
std::string_view PromptTemplate(std::string_view name);

}  // namespace semwm::annotate

#endif  // SEMWM_ANNOTATE_PROMPTS_H_

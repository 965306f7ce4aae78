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

#ifndef SEMWM_CORE_ASSETS_H_
#define SEMWM_CORE_ASSETS_H_

#include <map>
#include <string_view>

namespace semwm::assets {

// Files under assets/ compiled into the library, keyed by relative path
// (e.g. "prompts/judge.txt").
const std::map<std::string_view, std::string_view>& All();
std::string_view Get(std::string_view name);

}  // namespace semwm::assets

#endif  // SEMWM_CORE_ASSETS_H_

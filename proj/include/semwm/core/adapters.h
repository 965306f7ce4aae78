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

#ifndef SEMWM_CORE_ADAPTERS_H_
#define SEMWM_CORE_ADAPTERS_H_

#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "semwm/core/types.h"

namespace semwm {

// Maps fine-grained dataset labels onto the four benchmark categories.
// Labels are matched case-insensitively; unknown labels fall back to general.
class CategoryMap {
 public:
  // The table shipped as assets/category_map.json.
  static const CategoryMap& Default();
  static CategoryMap FromJson(const nlohmann::json& table);

  Category Lookup(std::string_view label) const;

 private:
  std::map<std::string, Category> table_;
};

// Converts one AiTW step record (episode_id, step_id, goal_info,
// results_action_type, results_yx_touch, results_yx_lift,
// results_type_action, episode_category) into a transition. Touch and lift
// coordinates are normalized (y, x) pairs scaled by the before screenshot.
Transition TransitionFromAitwStep(const nlohmann::json& step,
                                  const Screenshot& before,
                                  const Screenshot& after,
                                  const CategoryMap& categories =
                                      CategoryMap::Default());

// Converts one AndroidControl step (episode_id, step index, goal, action
// object with action_type and x/y/text/app_name/direction, and the optional
// step_instruction that becomes the high-level action).
Transition TransitionFromAndroidControlStep(const nlohmann::json& step,
                                            const Screenshot& before,
                                            const Screenshot& after,
                                            const CategoryMap& categories =
                                                CategoryMap::Default());

}  // namespace semwm

#endif  // SEMWM_CORE_ADAPTERS_H_

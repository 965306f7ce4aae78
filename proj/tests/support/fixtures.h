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

#ifndef SEMWM_TESTS_SUPPORT_FIXTURES_H_
#define SEMWM_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semwm/core/image_store.h"
#include "semwm/core/types.h"
#include "semwm/overlay/image.h"
#include "semwm/policy/environment.h"

namespace semwm::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

std::filesystem::path TestDataDir();

std::vector<std::uint8_t> SolidPng(int width, int height, overlay::Rgba color);

// A PNG whose pixels vary with `seed`, so distinct seeds give distinct bytes.
std::vector<std::uint8_t> PatternPng(int width, int height, std::uint32_t seed);

struct TransitionOptions {
  int width = 64;
  int height = 96;
  bool high_action = true;
  Category category = Category::kGeneral;
};

// Builds transition `id` with a tap action and registers both screenshots in
// `store` under "img/<id>_before.png" and "img/<id>_after.png".
Transition MakeTransition(const std::string& id, int index, ImageStore& store,
                          const TransitionOptions& options = {});

// `n` transitions "t000".."t<n-1>" with categories cycling through all four.
std::vector<Transition> MakeTransitions(int n, ImageStore& store,
                                        bool high_action = true);

// Writes the screenshots of `ts` from `store` under `dir` and a
// transitions.jsonl manifest next to them. Returns the manifest path.
std::filesystem::path WriteManifest(const std::filesystem::path& dir,
                                    const std::vector<Transition>& ts,
                                    const ImageStore& store);

// Eight QA lines for a transition, formatted as the annotator returns them.
std::string QaBlockReply(const std::string& tag, int count = 8);

// The ten-task mock phone suite from tests/data/fsm_suite.json.
std::vector<policy::FsmTask> LoadFsmSuite();

}  // namespace semwm::testing

#endif  // SEMWM_TESTS_SUPPORT_FIXTURES_H_

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

#include "support/fixtures.h"

#include <atomic>
#include <random>

#include "semwm/core/files.h"
#include "semwm/core/hash.h"
#include "semwm/core/jsonl.h"

namespace semwm::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("semwm-test-" + std::to_string(rd()) + "-" +
           std::to_string(counter.fetch_add(1)));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

fs::path TestDataDir() { return SEMWM_TEST_DATA_DIR; }

std::vector<std::uint8_t> SolidPng(int width, int height, overlay::Rgba color) {
  return overlay::EncodePng(overlay::Image(width, height, color));
}

std::vector<std::uint8_t> PatternPng(int width, int height, std::uint32_t seed) {
  overlay::Image image(width, height);
  std::mt19937 rng(seed);
  const auto base = static_cast<std::uint8_t>(rng());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      image.Set(x, y,
                {static_cast<std::uint8_t>(base + x), static_cast<std::uint8_t>(y * 2),
                 static_cast<std::uint8_t>(seed * 31), 255});
    }
  }
  return overlay::EncodePng(image);
}

Transition MakeTransition(const std::string& id, int index, ImageStore& store,
                          const TransitionOptions& options) {
  Transition t;
  t.id = id;
  t.goal = "Finish task " + id;
  t.category = options.category;
  t.app = "app" + std::to_string(index % 5);
  t.source = Source::kSynthetic;
  LowLevelAction tap;
  tap.kind = ActionKind::kTap;
  tap.point = Point{options.width / 2, options.height / 3};
  t.low_action = tap;
  if (options.high_action) {
    t.high_action = HighLevelAction{"Tap the item " + std::to_string(index)};
  }
  const auto seed = static_cast<std::uint32_t>(index * 2);
  for (auto [shot, suffix, s] :
       {std::tuple{&t.before, "_before.png", seed}, {&t.after, "_after.png", seed + 1}}) {
    auto png = PatternPng(options.width, options.height, s);
    shot->image_ref = "img/" + id + suffix;
    shot->sha256 = Sha256Hex(png);
    shot->width = options.width;
    shot->height = options.height;
    store.Put(shot->image_ref, std::move(png));
  }
  return t;
}

std::vector<Transition> MakeTransitions(int n, ImageStore& store,
                                        bool high_action) {
  std::vector<Transition> out;
  for (int i = 0; i < n; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "t%03d", i);
    TransitionOptions options;
    options.high_action = high_action;
    options.category = kAllCategories[i % 4];
    out.push_back(MakeTransition(id, i, store, options));
  }
  return out;
}

fs::path WriteManifest(const fs::path& dir, const std::vector<Transition>& ts,
                       const ImageStore& store) {
  for (const Transition& t : ts) {
    for (const Screenshot* s : {&t.before, &t.after}) {
      WriteFileBytes(dir / s->image_ref, store.Load(*s));
    }
  }
  const fs::path manifest = dir / "transitions.jsonl";
  SaveJsonl(manifest, ts);
  return manifest;
}

std::string QaBlockReply(const std::string& tag, int count) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    out += "Q: Is element " + std::to_string(i) + " of " + tag + " visible?\n\n";
    out += std::string("A: ") + (i % 2 == 0 ? "Yes" : "No") + "\n\n";
  }
  return out;
}

std::vector<policy::FsmTask> LoadFsmSuite() {
  return policy::LoadFsmTasks(TestDataDir() / "fsm_suite.json");
}

}  // namespace semwm::testing

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

#include "semwm/core/image_store.h"

#include "semwm/core/error.h"
#include "semwm/core/files.h"

namespace semwm {

void ImageStore::Put(const std::string& image_ref,
                     std::vector<std::uint8_t> bytes) {
  std::lock_guard<std::mutex> lock(mu_);
  memory_[image_ref] = std::move(bytes);
}

std::vector<std::uint8_t> ImageStore::Load(const Screenshot& shot) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = memory_.find(shot.image_ref); it != memory_.end()) {
      return it->second;
    }
  }
  if (root_.empty()) throw IoError("image not found: " + shot.image_ref);
  return ReadFileBytes(root_ / shot.image_ref);
}

}  // namespace semwm

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

#ifndef SEMWM_CORE_IMAGE_STORE_H_
#define SEMWM_CORE_IMAGE_STORE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "semwm/core/types.h"

namespace semwm {

// Resolves screenshot references to PNG bytes. Lookups check images added
// with Put first, then fall back to <root>/<image_ref>.
class ImageStore {
 public:
  ImageStore() = default;
  explicit ImageStore(std::filesystem::path root) : root_(std::move(root)) {}

  void Put(const std::string& image_ref, std::vector<std::uint8_t> bytes);

  // Throws IoError if the image cannot be found.
  std::vector<std::uint8_t> Load(const Screenshot& shot) const;

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  mutable std::mutex mu_;
  std::map<std::string, std::vector<std::uint8_t>> memory_;
};

}  // namespace semwm

#endif  // SEMWM_CORE_IMAGE_STORE_H_

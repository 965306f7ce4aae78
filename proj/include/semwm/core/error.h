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

#ifndef SEMWM_CORE_ERROR_H_
#define SEMWM_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace semwm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system failures (missing files, unreadable manifests).
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input text: JSONL lines, model replies, config values.
// `line` is 1-based when the error is tied to a line, 0 otherwise.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// A screenshot's bytes do not match the digest recorded in its manifest.
class HashMismatchError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace semwm

#endif  // SEMWM_CORE_ERROR_H_

// Copyright 2026 The linkprop Authors
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

#ifndef LINKPROP_ERROR_HPP_
#define LINKPROP_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace linkprop {

/// Broad failure class. The CLI maps each kind to its own exit status.
enum class ErrorKind { kValidation, kIo, kNumeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A single input record that cannot be interpreted. Ingestion counts and
/// skips these; callers that parse one value at a time see the exception.
class RejectedRecord : public Error {
 public:
  RejectedRecord(std::string raw, const std::string& reason)
      : Error(ErrorKind::kValidation, reason + ": '" + raw + "'"),
        raw_(std::move(raw)) {}

  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

inline Error validation_error(const std::string& what) {
  return Error(ErrorKind::kValidation, what);
}

inline Error io_error(const std::string& what) {
  return Error(ErrorKind::kIo, what);
}

inline Error numeric_error(const std::string& what) {
  return Error(ErrorKind::kNumeric, what);
}

}  // namespace linkprop

#endif  // LINKPROP_ERROR_HPP_

// Copyright 2026 The EvoLab Authors
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

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

namespace evolab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value failed a range or cross-field check.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Persisted state could not be read back. Carries the offending file.
class InitializationError : public Error {
 public:
  InitializationError(std::filesystem::path file, const std::string& what)
      : Error(file.string() + ": " + what), file_(std::move(file)) {}

  const std::filesystem::path& file() const noexcept { return file_; }

 private:
  std::filesystem::path file_;
};

/// A language-model call failed after retries.
class GatewayError : public Error {
 public:
  GatewayError(int status, const std::string& what)
      : Error(what), status_(status) {}

  /// HTTP status of the last attempt, 0 for transport failures.
  int status() const noexcept { return status_; }

 private:
  int status_;
};

/// Strict stub mode was asked for a completion it has no fixture for.
class FixtureMissError : public GatewayError {
 public:
  explicit FixtureMissError(std::string tag)
      : GatewayError(0, "no stub fixture for tag '" + tag + "'"),
        tag_(std::move(tag)) {}

  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

}  // namespace evolab

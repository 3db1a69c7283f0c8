/* Copyright 2026 The SSG Embedding Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>

namespace ssg {

enum class ErrorKind {
  InvariantViolation,
  ShapeMismatch,
  TapeMismatch,
  EmptyScene,
  EmptyGraph,
  BatchTooSmall,
  TooFewSamples,
  DegenerateData,
  BadK,
  SingleCluster,
  Parse,
  Io,
  NumericFailure,
  ConfigMismatch,
  Usage,
};

const char* to_string(ErrorKind kind);

// All recoverable failures in the library are reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace ssg

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

#include "core/error.hpp"

namespace ssg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::TapeMismatch: return "TapeMismatch";
    case ErrorKind::EmptyScene: return "EmptyScene";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::BatchTooSmall: return "BatchTooSmall";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::BadK: return "BadK";
    case ErrorKind::SingleCluster: return "SingleCluster";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
    case ErrorKind::NumericFailure: return "NumericFailure";
    case ErrorKind::ConfigMismatch: return "ConfigMismatch";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace ssg

// Copyright 2026 The ttmcorpus Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ttm {

enum class ErrorKind {
  kUnbalancedBracket,
  kMalformedTag,
  kUnknownTag,
  kFamilyMismatch,
  kEmptySpan,
  kBadRole,
  kBadContinuation,
  kEmptyDialogue,
  kDuplicateDialogueId,
  kSameFamilyNesting,
  kUnknownLabel,
  kMissingRow,
  kAmbiguousAlias,
  kDimensionMismatch,
  kTooFewInstances,
  kBadFormat,
  kIo,
};

inline std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnbalancedBracket: return "UnbalancedBracket";
    case ErrorKind::kMalformedTag: return "MalformedTag";
    case ErrorKind::kUnknownTag: return "UnknownTag";
    case ErrorKind::kFamilyMismatch: return "FamilyMismatch";
    case ErrorKind::kEmptySpan: return "EmptySpan";
    case ErrorKind::kBadRole: return "BadRole";
    case ErrorKind::kBadContinuation: return "BadContinuation";
    case ErrorKind::kEmptyDialogue: return "EmptyDialogue";
    case ErrorKind::kDuplicateDialogueId: return "DuplicateDialogueId";
    case ErrorKind::kSameFamilyNesting: return "SameFamilyNesting";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kMissingRow: return "MissingRow";
    case ErrorKind::kAmbiguousAlias: return "AmbiguousAlias";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kTooFewInstances: return "TooFewInstances";
    case ErrorKind::kBadFormat: return "BadFormat";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

// Every failure raised by the library. `kind` is stable and meant for
// dispatch; the message is for humans and may carry added context.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Same kind, message prefixed with where it happened.
  Error with_context(const std::string& where) const {
    Error e = *this;
    e.context_ = where + ": " + (context_.empty() ? std::string(std::runtime_error::what()) : context_);
    return e;
  }

  const char* what() const noexcept override {
    return context_.empty() ? std::runtime_error::what() : context_.c_str();
  }

 private:
  ErrorKind kind_;
  std::string context_;
};

}  // namespace ttm

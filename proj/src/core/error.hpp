// Copyright 2026 The TransferBench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tbench {

enum class ErrorKind {
  kInternal,
  kPrecondition,
  kValidation,
  kTemporalConflict,
  kProviderAuth,
  kProviderUnavailable,
  kMalformedRecord,
  kDocumentUnavailable,
  kTemplateFieldMissing,
  kLlmExhausted,
  kLlmRefusal,
  kJsonNotFound,
  kJsonMalformed,
  kMissingPlaceholder,
  kJudgeUnparseable,
  kGenerationFailed,
  kIntegrityViolation,
  kIncompleteCoverage,
  kIo,
  kEmptyJoin,
  kEmptyMatrix,
  kNoSourceCorrect,
  kNothingToAggregate,
  kTrainerUnavailable,
  kManifestMismatch,
  kMissingPredictions,
  kUsage,
};

// Process exit codes shared by the C API and the CLI.
enum class ExitCategory : int {
  kOk = 0,
  kInternal = 1,
  kConfig = 2,
  kData = 3,
};

std::string_view error_kind_name(ErrorKind kind);
ExitCategory exit_category(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace tbench

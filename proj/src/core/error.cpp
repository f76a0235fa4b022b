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


#include "core/error.hpp"

namespace tbench {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInternal: return "InternalError";
    case ErrorKind::kPrecondition: return "PreconditionViolation";
    case ErrorKind::kValidation: return "ValidationError";
    case ErrorKind::kTemporalConflict: return "TemporalConflictError";
    case ErrorKind::kProviderAuth: return "ProviderAuthError";
    case ErrorKind::kProviderUnavailable: return "ProviderUnavailable";
    case ErrorKind::kMalformedRecord: return "MalformedRecord";
    case ErrorKind::kDocumentUnavailable: return "DocumentUnavailable";
    case ErrorKind::kTemplateFieldMissing: return "TemplateFieldMissing";
    case ErrorKind::kLlmExhausted: return "LlmExhausted";
    case ErrorKind::kLlmRefusal: return "LlmRefusal";
    case ErrorKind::kJsonNotFound: return "JsonNotFound";
    case ErrorKind::kJsonMalformed: return "JsonMalformed";
    case ErrorKind::kMissingPlaceholder: return "MissingPlaceholder";
    case ErrorKind::kJudgeUnparseable: return "JudgeUnparseable";
    case ErrorKind::kGenerationFailed: return "GenerationFailed";
    case ErrorKind::kIntegrityViolation: return "IntegrityViolation";
    case ErrorKind::kIncompleteCoverage: return "IncompleteCoverage";
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kEmptyJoin: return "EmptyJoin";
    case ErrorKind::kEmptyMatrix: return "EmptyMatrix";
    case ErrorKind::kNoSourceCorrect: return "NoSourceCorrect";
    case ErrorKind::kNothingToAggregate: return "NothingToAggregate";
    case ErrorKind::kTrainerUnavailable: return "TrainerUnavailable";
    case ErrorKind::kManifestMismatch: return "ManifestMismatch";
    case ErrorKind::kMissingPredictions: return "MissingPredictions";
    case ErrorKind::kUsage: return "UsageError";
  }
  return "UnknownError";
}

ExitCategory exit_category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation:
    case ErrorKind::kTemporalConflict:
    case ErrorKind::kProviderAuth:
    case ErrorKind::kMissingPlaceholder:
    case ErrorKind::kUsage:
      return ExitCategory::kConfig;
    case ErrorKind::kMalformedRecord:
    case ErrorKind::kIntegrityViolation:
    case ErrorKind::kIncompleteCoverage:
    case ErrorKind::kManifestMismatch:
    case ErrorKind::kMissingPredictions:
    case ErrorKind::kEmptyJoin:
    case ErrorKind::kEmptyMatrix:
    case ErrorKind::kNoSourceCorrect:
    case ErrorKind::kNothingToAggregate:
    case ErrorKind::kDocumentUnavailable:
    case ErrorKind::kTemplateFieldMissing:
      return ExitCategory::kData;
    default:
      return ExitCategory::kInternal;
  }
}

}  // namespace tbench

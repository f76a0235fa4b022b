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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"
#include "llm/gateway.hpp"

namespace tbench::translate {

enum class Violation {
  kKeySetMismatch,
  kOptionCount,
  kCorrectOptionChanged,
  kEmptyValue,
  kDuplicateOption,
  kLabelChanged,
  kLineStructure,
  kNameDropped,
  kUnparseable,
};

std::string_view violation_code(Violation v);  // "KEY_SET_MISMATCH", ...
std::string join_codes(const std::vector<Violation>& vs);

// QA payloads are {"question", "options": {A..D}, "correct_option"}. Names are
// only required in the fields whose original text contains them. The result is
// sorted and free of duplicates.
std::vector<Violation> check_qa_integrity(const Json& original, const Json& translated,
                                          const std::vector<std::string>& names);

// Documents must keep their line count, the template's static labels line by
// line, every non-empty value, and every name present in the original.
std::vector<Violation> check_document_integrity(std::string_view template_id, const std::string& original,
                                                const std::string& translated,
                                                const std::vector<std::string>& names);

struct TranslationRecord {
  std::string kind;  // "qa" or "document"
  std::string id;    // base qa_id or entity_id
  LanguageCode source_language;
  LanguageCode target_language;
  int attempt = 1;
  Json before;
  Json after;  // null when the model output could not be read
  std::vector<Violation> integrity;

  bool clean() const { return integrity.empty(); }
};
Json to_json(const TranslationRecord& r);

struct QaTranslation {
  std::optional<FactQA> qa;  // empty when both attempts failed integrity
  std::vector<TranslationRecord> attempts;
};

// One retranslation after an integrity failure; a second failure leaves
// `qa` empty and the gap is logged.
QaTranslation translate_qa(llm::Gateway& translator, const FactQA& qa, const LanguageCode& target,
                           const std::vector<std::string>& names,
                           const llm::DecodingParams& decoding = {0.0, 2048});

struct DocumentTranslation {
  std::optional<SourceDocument> document;
  std::vector<TranslationRecord> attempts;
};

// Translates the template's free-text fields and rebuilds the document from the
// entity record, so labels and layout come from the template. A field the model
// did not return leaves its line out, which the line check reports. Templates
// without free text are copied with only the language changed.
DocumentTranslation translate_document(llm::Gateway& translator, const KnowledgeEntity& entity,
                                       const SourceDocument& document, const LanguageCode& target,
                                       const llm::DecodingParams& decoding = {0.0, 4096});

}  // namespace tbench::translate

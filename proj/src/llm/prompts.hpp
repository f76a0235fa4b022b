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

#include <set>
#include <string>
#include <string_view>

#include "core/placeholder.hpp"
#include "core/types.hpp"

namespace tbench::llm {

enum class PromptId {
  kQaGenerate,
  kQaVerify,
  kQaTranslate,
  kDocTranslate,
  kKnowledgeProbe,
  kRecognitionJudge,
};

std::string_view prompt_id_name(PromptId id);
PromptId parse_prompt_id(std::string_view name);

// QA generation and document translation have per-domain wording; the sports
// document variant is keyed by document template (soccer/baseball).
struct PromptTemplate {
  std::string key;  // e.g. "qa_generate.movie", "qa_verify"
  PromptId id;
  std::string body;
  std::set<std::string> required;
};

// `variant` is the domain name for qa_generate, the document template id for
// doc_translate, and ignored otherwise. Throws Error(kValidation) for an
// unknown variant. doc_translate.baseball does not exist: baseball documents
// carry no free text to translate.
const PromptTemplate& prompt_template(PromptId id, std::string_view variant = {});
std::string template_key(PromptId id, std::string_view variant);

// Byte-deterministic substitution; throws Error(kMissingPlaceholder, name).
std::string render_prompt(PromptId id, std::string_view variant, const Bindings& bindings);

// Document fields translated by doc_translate and the JSON key the model
// returns each one under.
struct TranslatableField {
  std::string field;     // template placeholder, e.g. "summary"
  std::string json_key;  // e.g. "Summary"
};
const std::vector<TranslatableField>& translatable_fields(std::string_view template_id);

}  // namespace tbench::llm

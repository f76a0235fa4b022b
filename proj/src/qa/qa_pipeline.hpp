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

#include <map>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "core/types.hpp"
#include "llm/gateway.hpp"

namespace tbench::qa {

struct DroppedItem {
  std::size_t index = 0;  // position in the generator's QA list
  std::string reason;
};

struct GenerationResult {
  std::vector<FactQA> qas;  // status generated, at most n
  std::vector<DroppedItem> dropped;
  int calls = 0;
};

// Calls the qa_generate prompt for the document's domain and keeps the first n
// structurally valid items. Unreadable or wrongly shaped output is regenerated
// once, then Error(kGenerationFailed).
GenerationResult generate_qas(llm::Gateway& generator, const SourceDocument& document, const LanguageCode& pivot,
                              int n, const llm::DecodingParams& decoding = {0.7, 4096});

// Uniform permutation of the four options; the correct letter follows its text.
FactQA shuffle_options(const FactQA& qa, RunRng& rng);

struct VerifierVerdict {
  enum class Decision { kSupported, kUnsupported };
  std::string qa_id;
  Decision decision = Decision::kUnsupported;
  std::string source_sentence;  // empty iff unsupported
  std::string note;             // why a verdict was downgraded or failed closed
};

// Supported only when the judge says so and every cited sentence occurs in the
// document after normalization. Unreadable judge output fails closed.
VerifierVerdict verify_qa(llm::Gateway& verifier, const FactQA& qa, const SourceDocument& document,
                          const llm::DecodingParams& decoding = {0.0, 1024});

// Supported items in input order, advanced to status verified with their
// source sentence attached.
std::vector<FactQA> filter_verified(const std::vector<FactQA>& qas, const std::vector<VerifierVerdict>& verdicts);

// Rubric given to human auditors, one entry per violation criterion.
struct RubricCriterion {
  std::string code;
  std::string description;
};
const std::vector<RubricCriterion>& audit_rubric();

// Samples ceil(fraction * |qas|) items uniformly without replacement and bundles
// each with its document, the rubric and blank verdict fields. 0 < fraction <= 1.
Json export_audit_sample(const std::vector<FactQA>& qas, const std::map<std::string, SourceDocument>& documents,
                         double fraction, RunRng& rng);
std::size_t audit_sample_size(std::size_t n, double fraction);
// Spreadsheet view of an audit bundle: one row per item, blank criterion and
// verdict columns.
std::string audit_csv(const Json& bundle);

// Prompt payload for a QA: {"question", "options", "correct_option"}.
Json qa_payload(const FactQA& qa);

}  // namespace tbench::qa

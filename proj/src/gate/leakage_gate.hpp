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

#include "core/types.hpp"
#include "llm/gateway.hpp"

namespace tbench::gate {

// Asks the target model for a short factual summary of the entity. Gateway
// errors are rethrown with the entity id in the message.
std::string probe_model_knowledge(llm::Gateway& target, const KnowledgeEntity& entity,
                                  const llm::DecodingParams& decoding = {});

// Judges the probe against the document. Known iff the judge lists at least
// one matched fact. Throws Error(kJudgeUnparseable) when the output is not the
// expected JSON shape or claims KNOWN without facts.
GateDecision judge_recognition(llm::Gateway& judge, const KnowledgeEntity& entity, const std::string& probe_text,
                               const SourceDocument& document, const llm::DecodingParams& decoding = {});

struct GateResult {
  std::vector<KnowledgeEntity> valid;
  std::vector<GateDecision> decisions;  // one per input entity, input order
};

// Probes and judges every entity independently. Any per-entity failure is
// recorded and the entity discarded; only Unknown verdicts pass.
GateResult gate(const std::vector<KnowledgeEntity>& entities,
                const std::map<std::string, SourceDocument>& documents, llm::Gateway& target,
                llm::Gateway& judge, int jobs = 1);

}  // namespace tbench::gate

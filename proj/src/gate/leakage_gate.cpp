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


#include "gate/leakage_gate.hpp"

#include "core/error.hpp"
#include "core/log.hpp"
#include "core/parallel.hpp"
#include "core/text.hpp"
#include "llm/json_extract.hpp"

namespace tbench::gate {

std::string probe_model_knowledge(llm::Gateway& target, const KnowledgeEntity& entity,
                                  const llm::DecodingParams& decoding) {
  if (entity.display_name.empty()) {
    throw Error(ErrorKind::kPrecondition, "entity " + entity.entity_id + " has no display name to probe");
  }
  llm::LlmRequest req;
  req.template_id = llm::PromptId::kKnowledgeProbe;
  req.bindings = {{"entity", entity.display_name}};
  req.decoding = decoding;
  req.endpoint_id = "target";
  try {
    return target.complete(req).raw_text;
  } catch (const Error& e) {
    throw Error(e.kind(), "probing entity " + entity.entity_id + " ('" + entity.display_name + "'): " + e.detail());
  }
}

GateDecision judge_recognition(llm::Gateway& judge, const KnowledgeEntity& entity, const std::string& probe_text,
                               const SourceDocument& document, const llm::DecodingParams& decoding) {
  if (probe_text.empty() || document.text.empty()) {
    throw Error(ErrorKind::kPrecondition, "judge_recognition needs non-empty probe and document");
  }
  llm::LlmRequest req;
  req.template_id = llm::PromptId::kRecognitionJudge;
  req.bindings = {{"entity", entity.display_name}, {"document", document.text}, {"probe", probe_text}};
  req.decoding = decoding;
  req.endpoint_id = "judge";
  const std::string raw = judge.complete(req).raw_text;

  auto unparseable = [&](const std::string& why) {
    return Error(ErrorKind::kJudgeUnparseable, "entity " + entity.entity_id + ": " + why);
  };
  Json j;
  try {
    j = llm::extract_json(raw);
  } catch (const Error& e) {
    throw unparseable(e.what());
  }
  if (!j.contains("verdict") || !j.at("verdict").is_string()) throw unparseable("missing verdict");
  const std::string verdict = text::casefold(j.at("verdict").get<std::string>());
  if (verdict != "known" && verdict != "unknown") throw unparseable("verdict must be KNOWN or UNKNOWN");

  GateDecision d;
  d.entity_id = entity.entity_id;
  d.probe_text = probe_text;
  d.judge_rationale = j.contains("rationale") && j.at("rationale").is_string() ? j.at("rationale").get<std::string>() : "";
  if (j.contains("matched_facts")) {
    const Json& facts = j.at("matched_facts");
    if (!facts.is_array()) throw unparseable("matched_facts must be an array");
    for (const auto& f : facts) {
      if (!f.is_string()) throw unparseable("matched_facts entries must be strings");
      if (!text::trim(f.get<std::string>()).empty()) d.matched_facts.push_back(f.get<std::string>());
    }
  }
  if (verdict == "known" && d.matched_facts.empty()) throw unparseable("KNOWN verdict without matched facts");
  d.verdict = d.matched_facts.empty() ? GateDecision::Verdict::kUnknown : GateDecision::Verdict::kKnown;
  return d;
}

GateResult gate(const std::vector<KnowledgeEntity>& entities, const std::map<std::string, SourceDocument>& documents,
                llm::Gateway& target, llm::Gateway& judge, int jobs) {
  for (const auto& e : entities) {
    if (!documents.count(e.entity_id)) {
      throw Error(ErrorKind::kPrecondition, "gate: no document for entity " + e.entity_id);
    }
  }
  const llm::DecodingParams probe_decoding{0.0, 512};
  const llm::DecodingParams judge_decoding{0.0, 1024};

  GateResult result;
  result.decisions = parallel_map(entities.size(), jobs, [&](std::size_t i) {
    const KnowledgeEntity& e = entities[i];
    GateDecision d;
    d.entity_id = e.entity_id;
    // Every failure below discards the entity.
    d.verdict = GateDecision::Verdict::kUnknown;
    try {
      d.probe_text = probe_model_knowledge(target, e, probe_decoding);
      d = judge_recognition(judge, e, d.probe_text, documents.at(e.entity_id), judge_decoding);
    } catch (const Error& err) {
      d.error = err.what();
      log::warn("gate: discarding " + e.entity_id + ": " + err.what());
    }
    return d;
  });
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const GateDecision& d = result.decisions[i];
    if (d.error.empty() && d.verdict == GateDecision::Verdict::kUnknown) result.valid.push_back(entities[i]);
  }
  return result;
}

}  // namespace tbench::gate

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

#include "assemble/dataset.hpp"
#include "test_util.hpp"

namespace tbench::testing {

inline PipelineConfig small_config(std::vector<LanguageCode> langs = {"en", "ja", "fr"}) {
  return validate_config(Json{{"target_model_id", "m"},
                              {"knowledge_cutoff", "2024-06"},
                              {"time_range", {{"start", "2024-12-01"}, {"end", "2025-06-30"}}},
                              {"languages", langs},
                              {"domains", {"music", "movie"}}});
}

inline KnowledgeEntity fixture_entity(const std::string& id, Domain d, const std::string& date) {
  KnowledgeEntity e;
  e.entity_id = id;
  e.domain = d;
  e.display_name = "Name " + id;
  e.occurrence_date = parse_date(date);
  e.payload = Json{{"id", id}};
  return e;
}

inline FactQA fixture_qa(const std::string& entity_id, int n, const LanguageCode& lang) {
  FactQA q = testing::sample_qa(entity_id, lang);
  q.question = "Question " + std::to_string(n) + " about " + entity_id;
  q.base_qa_id = make_base_qa_id(entity_id, q.question, q.options);
  q.qa_id = make_qa_id(q.base_qa_id, lang);
  if (lang != "en") q.question = "[" + lang + "] " + q.question;
  q.status = QaStatus::kVerified;
  q.source_sentence = "Fact " + std::to_string(n) + ".";
  return q;
}

// Two movies and one song; every language has all documents and QAs except
// where a test removes them.
inline assemble::AssemblyInput fixture_input(const std::vector<LanguageCode>& langs) {
  assemble::AssemblyInput in;
  in.entities = {fixture_entity("m2", Domain::kMovie, "2025-03-01"), fixture_entity("s1", Domain::kMusic, "2025-01-10"),
                 fixture_entity("m1", Domain::kMovie, "2025-02-01")};
  for (const auto& l : langs) {
    for (const auto& e : in.entities) in.documents[l][e.entity_id] = SourceDocument{e.entity_id, l, "doc " + l, "movie"};
    for (const auto& e : in.entities) {
      for (int n = 0; n < 2; ++n) in.qas[l].push_back(fixture_qa(e.entity_id, n, l));
    }
  }
  in.generated_per_entity = {{"m1", 3}, {"m2", 4}, {"s1", 2}, {"gone", 9}};
  in.attrition["movie"] = Attrition{5, 4, 2, 2, 7, 4, 4};
  in.created_at = "2025-09-01T00:00:00Z";
  return in;
}

}  // namespace tbench::testing

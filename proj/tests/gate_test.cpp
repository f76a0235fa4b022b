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


#include <gtest/gtest.h>

#include "core/error.hpp"
#include "gate/leakage_gate.hpp"
#include "providers/provider.hpp"
#include "test_util.hpp"

namespace tbench::gate {
namespace {

using testing::gateway_from;
using testing::simulated_gateway;

KnowledgeEntity movie(const std::string& id, const std::string& title, const std::string& cast) {
  KnowledgeEntity e;
  e.entity_id = id;
  e.domain = Domain::kMovie;
  e.display_name = title;
  e.occurrence_date = parse_date("2025-02-01");
  e.payload = Json{{"title", title}, {"casts", {cast}}, {"summary", "A quiet film."}, {"synopsis", "Rain falls."}};
  return e;
}

std::map<std::string, SourceDocument> docs_for(const std::vector<KnowledgeEntity>& es) {
  std::map<std::string, SourceDocument> out;
  for (const auto& e : es) out[e.entity_id] = providers::render_entity_document(e, "en");
  return out;
}

TEST(Gate, KnownEntitiesAreDiscarded) {
  const std::vector<KnowledgeEntity> es{movie("m1", "Glass Harbor", "Ava Stone"),
                                        movie("m2", "Paper Lantern", "Ines Varga"),
                                        movie("m3", "Salt Winter", "Bruno Quill")};
  auto target = simulated_gateway({{{"Paper Lantern", "Paper Lantern stars Ines Varga."}}});
  auto judge = simulated_gateway();
  const GateResult r = gate(es, docs_for(es), *target, *judge, 2);
  ASSERT_EQ(r.decisions.size(), 3u);
  ASSERT_EQ(r.valid.size(), 2u);
  EXPECT_EQ(r.valid[0].entity_id, "m1");
  EXPECT_EQ(r.valid[1].entity_id, "m3");
  EXPECT_EQ(r.decisions[1].verdict, GateDecision::Verdict::kKnown);
  EXPECT_EQ(r.decisions[1].matched_facts, std::vector<std::string>{"Ines Varga"});
  EXPECT_EQ(r.decisions[0].probe_text, llm::SimulatedModel::kNoKnowledgeReply);
}

TEST(Gate, JudgeOutputShapes) {
  const auto e = movie("m1", "Glass Harbor", "Ava Stone");
  const SourceDocument doc = providers::render_entity_document(e, "en");
  auto verdict_for = [&](const std::string& raw) {
    auto judge = gateway_from([raw](const llm::LlmRequest&) { return raw; });
    return judge_recognition(*judge, e, "probe", doc);
  };
  EXPECT_EQ(verdict_for(R"({"verdict": "unknown", "matched_facts": []})").verdict, GateDecision::Verdict::kUnknown);
  EXPECT_EQ(verdict_for(R"({"verdict": "KNOWN", "matched_facts": ["Ava Stone"], "rationale": "r"})").judge_rationale,
            "r");
  // A fact list decides the verdict, even under an UNKNOWN label.
  EXPECT_EQ(verdict_for(R"({"verdict": "UNKNOWN", "matched_facts": ["Ava Stone"]})").verdict,
            GateDecision::Verdict::kKnown);

  for (const std::string bad : {"no json", R"({"matched_facts": []})", R"({"verdict": "MAYBE"})",
                                R"({"verdict": "KNOWN", "matched_facts": []})",
                                R"({"verdict": "KNOWN", "matched_facts": "Ava"})"}) {
    try {
      verdict_for(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& err) {
      EXPECT_EQ(err.kind(), ErrorKind::kJudgeUnparseable) << bad;
    }
  }
}

TEST(Gate, PerEntityFailuresDiscardOnlyThatEntity) {
  testing::LogCapture logs;
  const std::vector<KnowledgeEntity> es{movie("m1", "Glass Harbor", "Ava Stone"),
                                        movie("m2", "Broken Probe", "Ines Varga")};
  auto target = gateway_from([](const llm::LlmRequest& r) -> std::optional<std::string> {
    if (r.bindings.at("entity") == "Broken Probe") return std::nullopt;
    return std::string(llm::SimulatedModel::kNoKnowledgeReply);
  });
  auto judge = simulated_gateway();
  const GateResult r = gate(es, docs_for(es), *target, *judge);
  ASSERT_EQ(r.valid.size(), 1u);
  EXPECT_EQ(r.valid[0].entity_id, "m1");
  EXPECT_NE(r.decisions[1].error.find("LlmExhausted"), std::string::npos);
  EXPECT_NE(logs.text().find("m2"), std::string::npos);
}

TEST(Gate, EveryEntityNeedsADocument) {
  const std::vector<KnowledgeEntity> es{movie("m1", "Glass Harbor", "Ava Stone")};
  auto g = simulated_gateway();
  EXPECT_THROW(gate(es, {}, *g, *g), Error);
}

}  // namespace
}  // namespace tbench::gate

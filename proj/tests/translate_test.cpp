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
#include "integrity_corpus.hpp"
#include "providers/provider.hpp"
#include "qa/qa_pipeline.hpp"
#include "test_util.hpp"
#include "translate/translator.hpp"

namespace tbench::translate {
namespace {

using testing::gateway_from;
using testing::simulated_gateway;

TEST(Integrity, FaithfulTranslationsPass) {
  for (std::size_t i = 0; i < 10; ++i) {
    const Json qa = testing::corpus_qa(i);
    EXPECT_TRUE(check_qa_integrity(qa, testing::corpus_translation(qa), testing::corpus_names(i)).empty());
    const std::string doc = testing::corpus_movie_document(i);
    EXPECT_TRUE(check_document_integrity("movie", doc, doc, testing::corpus_names(i)).empty());
  }
}

TEST(Integrity, AdversarialCorpusRaisesExactCodes) {
  const auto corpus = testing::integrity_corpus();
  ASSERT_EQ(corpus.size(), 50u);
  for (const auto& c : corpus) {
    EXPECT_EQ(join_codes(testing::run_integrity_case(c)), join_codes(c.expected)) << c.name;
  }
}

TEST(Integrity, QaEdgeCases) {
  const Json qa = testing::corpus_qa(0);
  Json t = testing::corpus_translation(qa);
  t["options"]["B"] = "  ";
  EXPECT_EQ(join_codes(check_qa_integrity(qa, t, {})), "EMPTY_VALUE");
  t = testing::corpus_translation(qa);
  t["options"]["B"] = t["options"]["A"];
  EXPECT_EQ(join_codes(check_qa_integrity(qa, t, {})), "DUPLICATE_OPTION");
  t = testing::corpus_translation(qa);
  t["options"]["B"] = 7;
  EXPECT_EQ(join_codes(check_qa_integrity(qa, t, {})), "EMPTY_VALUE");
  t = testing::corpus_translation(qa);
  t["options"].erase("D");
  EXPECT_EQ(join_codes(check_qa_integrity(qa, t, {})), "OPTION_COUNT");
  EXPECT_EQ(join_codes(check_qa_integrity(qa, Json::array(), {})), "KEY_SET_MISMATCH");
  // Several faults at once come back sorted and unique.
  t = testing::corpus_translation(qa);
  t["correct_option"] = "D";
  t["extra"] = 1;
  t["options"]["E"] = "e";
  EXPECT_EQ(join_codes(check_qa_integrity(qa, t, {})), "KEY_SET_MISMATCH,OPTION_COUNT,CORRECT_OPTION_CHANGED");
}

TEST(Integrity, NamesOnlyCountWhereTheOriginalHadThem) {
  const Json qa = testing::corpus_qa(0);
  Json t = testing::corpus_translation(qa);
  // "Ava Stone" is option A only; moving it out of the question is irrelevant.
  EXPECT_TRUE(check_qa_integrity(qa, t, {"Ava Stone", "Nobody Here"}).empty());
  t["options"]["A"] = "Ava S.";
  EXPECT_EQ(join_codes(check_qa_integrity(qa, t, {"Ava Stone"})), "NAME_DROPPED");
}

TEST(Integrity, DocumentStructure) {
  const std::string doc = testing::corpus_movie_document(0);
  std::string dropped_line = doc.substr(doc.find('\n') + 1);
  EXPECT_EQ(join_codes(check_document_integrity("movie", doc, dropped_line, {})), "LINE_STRUCTURE");
  std::string added = doc + "- Movie Title: again\n";
  EXPECT_EQ(join_codes(check_document_integrity("movie", doc, added, {})), "LABEL_CHANGED,LINE_STRUCTURE");
  std::string emptied = doc;
  const std::string label = "- Movie Synopsis: ";
  emptied.replace(emptied.find(label) + label.size(), std::string::npos, "\n");
  EXPECT_EQ(join_codes(check_document_integrity("movie", doc, emptied, {})), "EMPTY_VALUE");
}

FactQA verified_qa() {
  FactQA qa = testing::sample_qa();
  qa.status = QaStatus::kVerified;
  qa.source_sentence = "Ava Stone leads the rescue.";
  return qa;
}

TEST(TranslateQa, SimulatedTranslationKeepsIdentity) {
  auto gw = simulated_gateway();
  const FactQA qa = verified_qa();
  const QaTranslation t = translate_qa(*gw, qa, "ja", {"Glass Harbor", "Ava Stone"});
  ASSERT_TRUE(t.qa);
  EXPECT_EQ(t.qa->language, "ja");
  EXPECT_EQ(t.qa->qa_id, qa.base_qa_id + ".ja");
  EXPECT_EQ(t.qa->base_qa_id, qa.base_qa_id);
  EXPECT_EQ(t.qa->correct_option, qa.correct_option);
  EXPECT_EQ(t.qa->source_sentence, qa.source_sentence);
  EXPECT_EQ(t.qa->question.rfind("[ja] ", 0), 0u);
  ASSERT_EQ(t.attempts.size(), 1u);
  EXPECT_TRUE(t.attempts[0].clean());
  EXPECT_EQ(to_json(t.attempts[0]).at("integrity"), Json::array());
}

TEST(TranslateQa, RetriesOnceThenGivesUp) {
  testing::LogCapture logs;
  const FactQA qa = verified_qa();
  Json flipped = qa::qa_payload(qa);
  flipped["correct_option"] = "C";
  int calls = 0;
  auto flaky = gateway_from([&](const llm::LlmRequest&) {
    return ++calls == 1 ? flipped.dump() : Json{{"QA", {qa::qa_payload(qa)}}}.dump();
  });
  const QaTranslation ok = translate_qa(*flaky, qa, "fr", {});
  ASSERT_TRUE(ok.qa);
  ASSERT_EQ(ok.attempts.size(), 2u);
  EXPECT_EQ(join_codes(ok.attempts[0].integrity), "CORRECT_OPTION_CHANGED");

  auto broken = gateway_from([](const llm::LlmRequest&) { return std::string("no json"); });
  const QaTranslation gap = translate_qa(*broken, qa, "fr", {});
  EXPECT_FALSE(gap.qa);
  ASSERT_EQ(gap.attempts.size(), 2u);
  EXPECT_EQ(join_codes(gap.attempts[1].integrity), "UNPARSEABLE");
  EXPECT_NE(logs.text().find("dropping"), std::string::npos);
}

TEST(TranslateQa, Preconditions) {
  auto gw = simulated_gateway();
  EXPECT_THROW(translate_qa(*gw, testing::sample_qa(), "ja", {}), Error);
  EXPECT_THROW(translate_qa(*gw, verified_qa(), "en", {}), Error);
}

KnowledgeEntity movie_entity() {
  KnowledgeEntity e;
  e.entity_id = "movie-7";
  e.domain = Domain::kMovie;
  e.display_name = "Glass Harbor";
  e.occurrence_date = parse_date("2025-02-01");
  e.payload = Json{{"title", "Glass Harbor"},
                   {"casts", {"Ava Stone", "Marcus Calder"}},
                   {"summary", "Ava Stone returns to Port Ellis."},
                   {"synopsis", "The bakery closes. Marcus Calder leaves."}};
  return e;
}

TEST(TranslateDocument, RebuildsFromTheTemplate) {
  auto gw = simulated_gateway();
  const KnowledgeEntity e = movie_entity();
  const SourceDocument doc = providers::render_entity_document(e, "en");
  const DocumentTranslation t = translate_document(*gw, e, doc, "es");
  ASSERT_TRUE(t.document);
  EXPECT_EQ(t.document->language, "es");
  EXPECT_EQ(t.document->text,
            "- Movie Title: Glass Harbor\n- Movie Cast: [es] Ava Stone, Marcus Calder\n"
            "- Movie Summary: [es] Ava Stone returns to Port Ellis.\n"
            "- Movie Synopsis: [es] The bakery closes. Marcus Calder leaves.\n");
}

TEST(TranslateDocument, MissingFieldBreaksLineStructure) {
  testing::LogCapture logs;
  const KnowledgeEntity e = movie_entity();
  const SourceDocument doc = providers::render_entity_document(e, "en");
  auto partial = gateway_from([](const llm::LlmRequest&) {
    return Json{{"translation", {{"Cast", "Ava Stone, Marcus Calder"}, {"Summary", "x"}}}}.dump();
  });
  const DocumentTranslation t = translate_document(*partial, e, doc, "fr");
  EXPECT_FALSE(t.document);
  ASSERT_EQ(t.attempts.size(), 2u);
  EXPECT_EQ(join_codes(t.attempts[0].integrity), "KEY_SET_MISMATCH,LINE_STRUCTURE");

  auto nameless = gateway_from([](const llm::LlmRequest&) {
    return Json{{"translation", {{"Cast", "A. Stone, M. Calder"}, {"Summary", "x"}, {"Synopsis", "y"}}}}.dump();
  });
  EXPECT_EQ(join_codes(translate_document(*nameless, e, doc, "fr").attempts[0].integrity), "NAME_DROPPED");
}

TEST(TranslateDocument, BaseballIsCopied) {
  KnowledgeEntity e;
  e.entity_id = "match-1";
  e.domain = Domain::kSports;
  e.payload = Json{{"sports", "Baseball"},  {"league", "L"},      {"home_team", "Owls"},  {"away_team", "Gulls"},
                   {"date", "2025-04-01"},  {"home_score", 3},    {"away_score", 2},      {"venue", "Summit Field"},
                   {"home_innings", "0 1"}, {"home_hits", 7},     {"home_errors", 0},     {"away_innings", "1 1"},
                   {"away_hits", 6},        {"away_errors", 1}};
  const SourceDocument doc = providers::render_entity_document(e, "en");
  EXPECT_EQ(doc.template_id, "baseball");
  auto never = gateway_from([](const llm::LlmRequest&) -> std::optional<std::string> {
    ADD_FAILURE() << "baseball documents need no model call";
    return std::nullopt;
  });
  const DocumentTranslation t = translate_document(*never, e, doc, "ja");
  ASSERT_TRUE(t.document);
  EXPECT_EQ(t.document->text, doc.text);
  EXPECT_EQ(t.document->language, "ja");
  EXPECT_TRUE(t.attempts.empty());
}

}  // namespace
}  // namespace tbench::translate

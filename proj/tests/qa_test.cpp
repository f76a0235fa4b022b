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

#include <set>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "providers/documents.hpp"
#include "qa/qa_pipeline.hpp"
#include "test_util.hpp"

namespace tbench::qa {
namespace {

using testing::gateway_from;
using testing::simulated_gateway;

SourceDocument movie_doc() {
  const Bindings f{{"title", "Glass Harbor"},
                   {"casts", "Ava Stone, Marcus Calder, Ines Varga"},
                   {"summary", "A retired engineer named Felix Okafor returns to Port Ellis after 12 years away."},
                   {"synopsis", "The town council of Saltmere votes to close the bakery. The film closes on a "
                                "concert held 3 weeks later."}};
  return SourceDocument{"movie-001", "en", providers::render_document("movie", f), "movie"};
}

Json item(const std::string& q, std::vector<std::string> opts, const std::string& correct = "A") {
  return Json{{"question", q},
              {"options", {{"A", opts[0]}, {"B", opts[1]}, {"C", opts[2]}, {"D", opts[3]}}},
              {"correct_option", correct}};
}

TEST(Generate, SimulatedGeneratorYieldsOneQuestionPerFactSentence) {
  auto gen = simulated_gateway();
  const GenerationResult r = generate_qas(*gen, movie_doc(), "en", 6);
  ASSERT_EQ(r.qas.size(), 4u);
  EXPECT_EQ(r.calls, 1);
  std::set<std::string> ids;
  for (const auto& qa : r.qas) {
    EXPECT_TRUE(fact_qa_problems(qa).empty());
    EXPECT_EQ(qa.status, QaStatus::kGenerated);
    EXPECT_EQ(qa.language, "en");
    EXPECT_EQ(qa.qa_id, qa.base_qa_id + ".en");
    ids.insert(qa.base_qa_id);
  }
  EXPECT_EQ(ids.size(), 4u);
  EXPECT_EQ(generate_qas(*gen, movie_doc(), "en", 2).qas.size(), 2u);
}

TEST(Generate, RegeneratesOnceAfterUnreadableOutput) {
  int calls = 0;
  auto gen = gateway_from([&](const llm::LlmRequest&) -> std::optional<std::string> {
    if (++calls == 1) return std::string("Sorry, here you go: {\"QA\": [");
    return Json{{"QA", {item("Who?", {"a", "b", "c", "d"})}}}.dump();
  });
  const GenerationResult r = generate_qas(*gen, movie_doc(), "en", 6);
  EXPECT_EQ(r.calls, 2);
  EXPECT_EQ(r.qas.size(), 1u);
}

TEST(Generate, TwoUnreadableOutputsFail) {
  auto gen = gateway_from([](const llm::LlmRequest&) { return std::string(R"({"questions": []})"); });
  try {
    generate_qas(*gen, movie_doc(), "en", 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGenerationFailed);
  }
}

TEST(Generate, InvalidAndDuplicateItemsAreDroppedWithReasons) {
  const Json out{{"QA",
                  {item("Q1", {"a", "b", "c", "d"}), item("Q1", {"a", "b", "c", "d"}),
                   item("Q2", {"a", "a", "c", "d"}), item("Q3", {"a", "b", "c", "d"}, "E"),
                   Json{{"question", "Q4"}, {"options", {{"A", "a"}, {"B", "b"}, {"C", "c"}}}, {"correct_option", "A"}},
                   item("  Q5  ", {" a", "b ", "c", "d"}, " B ")}}};
  auto gen = gateway_from([&](const llm::LlmRequest&) { return out.dump(); });
  const GenerationResult r = generate_qas(*gen, movie_doc(), "en", 6);
  ASSERT_EQ(r.qas.size(), 2u);
  EXPECT_EQ(r.qas[1].question, "Q5");
  EXPECT_EQ(r.qas[1].options[0], "a");
  EXPECT_EQ(r.qas[1].correct_option, OptionLetter::kB);
  ASSERT_EQ(r.dropped.size(), 4u);
  EXPECT_EQ(r.dropped[0].index, 1u);
  EXPECT_NE(r.dropped[0].reason.find("duplicate"), std::string::npos);
  EXPECT_NE(r.dropped[1].reason.find("duplicate option"), std::string::npos);
  EXPECT_NE(r.dropped[2].reason.find("correct_option"), std::string::npos);
  EXPECT_NE(r.dropped[3].reason.find("expected 4 options"), std::string::npos);
}

TEST(Shuffle, CorrectLetterFollowsItsText) {
  const FactQA qa = testing::sample_qa();
  auto rng = new_run_rng(7, "shuffle");
  for (int i = 0; i < 500; ++i) {
    const FactQA s = shuffle_options(qa, rng);
    ASSERT_EQ(s.correct_text(), qa.correct_text());
    auto a = s.options, b = qa.options;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    ASSERT_EQ(a, b);
    ASSERT_EQ(s.base_qa_id, qa.base_qa_id);
  }
}

TEST(Shuffle, EveryLetterIsReachable) {
  const FactQA qa = testing::sample_qa();
  auto rng = new_run_rng(1, "shuffle");
  std::array<int, 4> counts{};
  for (int i = 0; i < 400; ++i) ++counts[static_cast<std::size_t>(shuffle_options(qa, rng).correct_option)];
  for (int c : counts) EXPECT_GT(c, 60);
}

FactQA doc_qa(const std::string& correct) {
  FactQA qa = testing::sample_qa();
  qa.options = {correct, "Tomas Berg", "Sara Lind", "Noah Fischer"};
  return qa;
}

TEST(Verify, SimulatedJudgeCitesTheDocument) {
  auto judge = simulated_gateway();
  const VerifierVerdict v = verify_qa(*judge, doc_qa("Port Ellis"), movie_doc());
  EXPECT_EQ(v.decision, VerifierVerdict::Decision::kSupported);
  EXPECT_NE(v.source_sentence.find("Port Ellis"), std::string::npos);
  EXPECT_EQ(verify_qa(*judge, doc_qa("Vell Island"), movie_doc()).decision, VerifierVerdict::Decision::kUnsupported);
}

TEST(Verify, UngroundedCitationsAreDowngraded) {
  auto judge_saying = [](std::string raw) { return gateway_from([raw](const llm::LlmRequest&) { return raw; }); };
  const FactQA qa = doc_qa("Port Ellis");
  auto invented = judge_saying(R"({"Decision": "SUPPORTED", "SourceSentence": "Port Ellis is a quiet town."})");
  const VerifierVerdict v = verify_qa(*invented, qa, movie_doc());
  EXPECT_EQ(v.decision, VerifierVerdict::Decision::kUnsupported);
  EXPECT_NE(v.note.find("downgraded"), std::string::npos);

  // One real sentence plus one invented one is still ungrounded.
  auto mixed = judge_saying(
      R"({"Decision": "SUPPORTED", "SourceSentence": "The town council of Saltmere votes to close the bakery. It rains."})");
  EXPECT_EQ(verify_qa(*mixed, qa, movie_doc()).decision, VerifierVerdict::Decision::kUnsupported);

  auto sloppy = judge_saying(
      R"({"Decision": " supported ", "SourceSentence": "the town council of SALTMERE votes to close the bakery"})");
  EXPECT_EQ(verify_qa(*sloppy, qa, movie_doc()).decision, VerifierVerdict::Decision::kSupported);
}

TEST(Verify, UnreadableJudgeFailsClosed) {
  for (const std::string raw : {"no", R"({"verdict": "SUPPORTED"})", R"({"Decision": "PROBABLY"})"}) {
    auto judge = gateway_from([raw](const llm::LlmRequest&) { return raw; });
    const VerifierVerdict v = verify_qa(*judge, doc_qa("Port Ellis"), movie_doc());
    EXPECT_EQ(v.decision, VerifierVerdict::Decision::kUnsupported) << raw;
    EXPECT_FALSE(v.note.empty()) << raw;
  }
}

TEST(Verify, OnlyGeneratedItemsAreVerified) {
  FactQA qa = doc_qa("Port Ellis");
  qa.status = QaStatus::kVerified;
  auto judge = simulated_gateway();
  EXPECT_THROW(verify_qa(*judge, qa, movie_doc()), Error);
}

TEST(Filter, KeepsSupportedItemsInOrder) {
  FactQA a = testing::sample_qa("e1"), b = testing::sample_qa("e2"), c = testing::sample_qa("e3");
  const std::vector<VerifierVerdict> vs{{c.qa_id, VerifierVerdict::Decision::kSupported, "s3", ""},
                                        {a.qa_id, VerifierVerdict::Decision::kSupported, "s1", ""},
                                        {b.qa_id, VerifierVerdict::Decision::kUnsupported, "", ""}};
  const auto out = filter_verified({a, b, c}, vs);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].entity_id, "e1");
  EXPECT_EQ(out[0].status, QaStatus::kVerified);
  EXPECT_EQ(out[1].source_sentence, "s3");
  EXPECT_THROW(filter_verified({a}, {}), Error);
}

TEST(Audit, SampleSizeIsTheCeiling) {
  EXPECT_EQ(audit_sample_size(175, 0.2), 35u);
  EXPECT_EQ(audit_sample_size(176, 0.2), 36u);
  EXPECT_EQ(audit_sample_size(1, 0.01), 1u);
  EXPECT_EQ(audit_sample_size(0, 0.5), 0u);
  EXPECT_EQ(audit_sample_size(10, 1.0), 10u);
}

TEST(Audit, SamplesWithoutReplacement) {
  std::vector<FactQA> qas;
  for (int i = 0; i < 23; ++i) qas.push_back(testing::sample_qa("e" + std::to_string(i)));
  const std::map<std::string, SourceDocument> docs{{"e0", SourceDocument{"e0", "en", "doc zero", "movie"}}};
  auto rng = new_run_rng(5, "audit");
  const Json bundle = export_audit_sample(qas, docs, 0.3, rng);
  EXPECT_EQ(bundle.at("population"), 23);
  EXPECT_EQ(bundle.at("sample_size"), 7);
  std::set<std::string> ids;
  for (const auto& it : bundle.at("items")) {
    ids.insert(it.at("qa").at("qa_id").get<std::string>());
    EXPECT_EQ(it.at("violations").size(), audit_rubric().size());
    EXPECT_EQ(it.at("verdict"), "");
  }
  EXPECT_EQ(ids.size(), 7u);

  auto again = new_run_rng(5, "audit");
  EXPECT_EQ(export_audit_sample(qas, docs, 0.3, again), bundle);
  auto bad = new_run_rng(5, "audit");
  for (double f : {0.0, -0.1, 1.5}) {
    try {
      export_audit_sample(qas, docs, f, bad);
      ADD_FAILURE() << f;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kUsage);
    }
  }
}

TEST(Audit, CsvQuotesFields) {
  FactQA qa = testing::sample_qa();
  qa.question = "Who said \"hello, world\"?";
  auto rng = new_run_rng(1, "audit");
  const std::string csv = audit_csv(export_audit_sample({qa}, {}, 1.0, rng));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "qa_id,entity_id,language,question,A,B,C,D,correct_option,source_sentence,UNRELATED,TOO_GENERAL,"
            "UNVERIFIABLE,WRONG_ANSWER,verdict");
  EXPECT_NE(csv.find("\"Who said \"\"hello, world\"\"?\""), std::string::npos);
}

}  // namespace
}  // namespace tbench::qa

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

#include <algorithm>
#include <numeric>
#include <set>

#include "core/config.hpp"
#include "core/date.hpp"
#include "core/error.hpp"
#include "core/hash.hpp"
#include "core/io.hpp"
#include "core/parallel.hpp"
#include "core/placeholder.hpp"
#include "core/retry.hpp"
#include "core/rng.hpp"
#include "core/text.hpp"
#include "core/types.hpp"
#include "test_util.hpp"

namespace tbench {
namespace {

using testing::TempDir;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no tbench::Error thrown";
  return ErrorKind::kInternal;
}

TEST(Date, ParsesFullAndMonthForms) {
  EXPECT_EQ(format_date(parse_date("2024-02-29")), "2024-02-29");
  EXPECT_EQ(format_date(parse_date("2024-06")), "2024-06-01");
  EXPECT_EQ(kind_of([] { parse_full_date("2024-06"); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] { parse_date("2023-02-29"); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] { parse_date("June 2024"); }), ErrorKind::kValidation);
}

TEST(Date, AddMonthsClampsToMonthEnd) {
  EXPECT_EQ(format_date(add_months(parse_date("2024-08-31"), 6)), "2025-02-28");
  EXPECT_EQ(format_date(add_months(parse_date("2023-08-31"), 6)), "2024-02-29");
  EXPECT_EQ(format_date(add_months(parse_date("2024-06-15"), 6)), "2024-12-15");
  EXPECT_EQ(format_date(add_months(parse_date("2024-11-30"), 3)), "2025-02-28");
}

TEST(Date, RangeIsInclusive) {
  const DateRange r{parse_date("2025-01-01"), parse_date("2025-01-31")};
  EXPECT_TRUE(r.contains(parse_date("2025-01-01")));
  EXPECT_TRUE(r.contains(parse_date("2025-01-31")));
  EXPECT_FALSE(r.contains(parse_date("2025-02-01")));
}

TEST(Hash, KnownSha256Vectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Hash, FieldHasherSeparatesFields) {
  EXPECT_NE(FieldHasher().add("ab").add("c").hex(), FieldHasher().add("a").add("bc").hex());
  EXPECT_EQ(FieldHasher().add("x").hex(), FieldHasher().add("x").hex());
}

TEST(Rng, StreamsAreKeyedBySeedAndLabel) {
  auto a = new_run_rng(7, "shuffle/q1");
  auto b = new_run_rng(7, "shuffle/q1");
  auto c = new_run_rng(7, "shuffle/q2");
  auto d = new_run_rng(8, "shuffle/q1");
  const auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
  EXPECT_NE(x, d.next());
}

TEST(Rng, BelowStaysInBoundAndCoversIt) {
  auto rng = new_run_rng(1, "below");
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, ShuffleIsAPermutation) {
  auto rng = new_run_rng(3, "perm");
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> v(1 + trial % 17);
    std::iota(v.begin(), v.end(), 0);
    auto s = v;
    rng.shuffle(s);
    std::sort(s.begin(), s.end());
    ASSERT_EQ(s, v);
  }
}

TEST(Text, NfcComposes) {
  EXPECT_EQ(text::nfc("Cafe\xCC\x81"), "Caf\xC3\xA9");
  EXPECT_EQ(kind_of([] { text::nfc("\xFF\xFE"); }), ErrorKind::kValidation);
}

TEST(Text, NormalizedContainsIgnoresCaseSpaceAndFinalPunctuation) {
  const std::string doc = "- Movie Summary: The crew  reaches Port Ellis. Then it rains.";
  EXPECT_TRUE(text::normalized_contains(doc, "the crew reaches PORT ELLIS."));
  EXPECT_FALSE(text::normalized_contains(doc, "the crew reaches Vell Island."));
  EXPECT_FALSE(text::normalized_contains(doc, "   "));
}

TEST(Text, SplitSentences) {
  const auto s = text::split_sentences("One fact. Two facts! Three? Trailing");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], "One fact.");
  EXPECT_EQ(s[2], "Three?");
  EXPECT_EQ(s[3], "Trailing");
  EXPECT_EQ(text::split_sentences("Score 2.5 points.").size(), 1u);
}

TEST(Text, SplitKeepsEmptyFields) {
  EXPECT_EQ(text::split("a,,b", ',').size(), 3u);
  EXPECT_EQ(text::join({"a", "b", "c"}, ", "), "a, b, c");
  EXPECT_EQ(text::trim("  x \n"), "x");
}

TEST(Placeholder, SinglePassSubstitution) {
  const Bindings b{{"name", "{lang}"}, {"lang", "ja"}};
  EXPECT_EQ(substitute("{name} in {lang} {Literal} {}", b, ErrorKind::kMissingPlaceholder), "{lang} in ja {Literal} {}");
  EXPECT_EQ(find_placeholders("{a_b} {C} {x1} {y}"), (std::set<std::string>{"a_b", "y"}));
  EXPECT_EQ(kind_of([] { substitute("{missing}", {}, ErrorKind::kTemplateFieldMissing); }),
            ErrorKind::kTemplateFieldMissing);
}

TEST(Retry, DelaysDoubleUpToTheCap) {
  RetryPolicy p{6, std::chrono::milliseconds(100), std::chrono::milliseconds(350)};
  EXPECT_EQ(p.delay_before(1).count(), 0);
  EXPECT_EQ(p.delay_before(2).count(), 100);
  EXPECT_EQ(p.delay_before(3).count(), 200);
  EXPECT_EQ(p.delay_before(4).count(), 350);
  EXPECT_EQ(p.delay_before(6).count(), 350);
}

TEST(Parallel, KeepsIndexOrder) {
  const auto out = parallel_map(100, 4, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
}

TEST(Parallel, RethrowsLowestFailingIndex) {
  try {
    parallel_map(50, 3, [](std::size_t i) -> int {
      if (i == 7 || i == 31) throw Error(ErrorKind::kIo, std::to_string(i));
      return 0;
    });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.detail(), "7");
  }
}

TEST(Io, JsonlRoundTripWithSortedKeys) {
  TempDir dir;
  const std::vector<Json> recs{Json{{"b", 1}, {"a", "x"}}, Json{{"k", {1, 2}}}};
  io::write_jsonl(dir / "sub/r.jsonl", recs);
  EXPECT_EQ(io::read_file(dir / "sub/r.jsonl"), "{\"a\":\"x\",\"b\":1}\n{\"k\":[1,2]}\n");
  EXPECT_EQ(io::read_jsonl(dir / "sub/r.jsonl"), recs);
}

TEST(Io, MalformedLineNamesItsPosition) {
  try {
    io::parse_jsonl("{\"a\":1}\n\n{oops\n", "mem");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformedRecord);
    EXPECT_NE(e.detail().find("mem:3"), std::string::npos);
  }
}

TEST(Types, QaIdsAreContentAddressed) {
  const FactQA qa = testing::sample_qa();
  EXPECT_EQ(qa.base_qa_id.size(), 17u);
  EXPECT_EQ(qa.base_qa_id[0], 'q');
  EXPECT_EQ(qa.qa_id, qa.base_qa_id + ".en");
  auto other = qa.options;
  std::swap(other[0], other[1]);
  EXPECT_NE(make_base_qa_id(qa.entity_id, qa.question, other), qa.base_qa_id);
}

TEST(Types, FactQaProblems) {
  FactQA qa = testing::sample_qa();
  EXPECT_TRUE(fact_qa_problems(qa).empty());
  qa.options[2] = qa.options[0];
  EXPECT_EQ(fact_qa_problems(qa).size(), 1u);
  qa.question.clear();
  qa.options[3].clear();
  EXPECT_EQ(fact_qa_problems(qa).size(), 3u);
}

TEST(Types, JsonRoundTrips) {
  FactQA qa = testing::sample_qa();
  qa.status = QaStatus::kVerified;
  qa.source_sentence = "Ava Stone leads the rescue.";
  EXPECT_EQ(fact_qa_from_json(to_json(qa)), qa);
  EXPECT_EQ(to_json(qa).at("schema_version"), 1);

  GateDecision g{"e1", "probe", GateDecision::Verdict::kKnown, "why", {"fact"}, ""};
  EXPECT_EQ(gate_decision_from_json(to_json(g)), g);
  Attrition a{9, 8, 7, 6, 5, 4, 3};
  EXPECT_EQ(attrition_from_json(to_json(a)), a);
  EXPECT_EQ(kind_of([] { fact_qa_from_json(Json{{"qa_id", "x"}}); }), ErrorKind::kMalformedRecord);
}

TEST(Errors, ExitCategories) {
  EXPECT_EQ(exit_category(ErrorKind::kValidation), ExitCategory::kConfig);
  EXPECT_EQ(exit_category(ErrorKind::kProviderAuth), ExitCategory::kConfig);
  EXPECT_EQ(exit_category(ErrorKind::kManifestMismatch), ExitCategory::kData);
  EXPECT_EQ(exit_category(ErrorKind::kMissingPredictions), ExitCategory::kData);
  EXPECT_EQ(exit_category(ErrorKind::kLlmExhausted), ExitCategory::kInternal);
  EXPECT_EQ(error_kind_name(ErrorKind::kManifestMismatch), "ManifestMismatch");
}

Json minimal_config() {
  return Json{{"target_model_id", "m"},
              {"knowledge_cutoff", "2024-06"},
              {"time_range", {{"start", "2024-12-01"}, {"end", "2025-06-30"}}},
              {"languages", {"en", "ja"}}};
}

TEST(Config, DefaultsAndPivot) {
  const PipelineConfig c = validate_config(minimal_config());
  EXPECT_EQ(c.window_months, 6);
  EXPECT_EQ(c.domains.size(), 3u);
  EXPECT_EQ(c.entities_per_domain, 10);
  EXPECT_EQ(c.questions_per_entity, 6);
  EXPECT_EQ(c.pivot(), "en");
  EXPECT_EQ(c.target_languages(), std::vector<LanguageCode>{"ja"});
  EXPECT_DOUBLE_EQ(c.generator.temperature, 0.7);
  EXPECT_DOUBLE_EQ(c.judge.temperature, 0.0);
  EXPECT_EQ(format_date(c.earliest_allowed()), "2024-12-01");
}

TEST(Config, RoundTripsThroughJson) {
  Json raw = minimal_config();
  raw["providers"] = Json::array({Json{{"name", "p"}, {"domain", "music"}, {"fixture", "x.json"}}});
  const PipelineConfig c = validate_config(raw);
  EXPECT_EQ(validate_config(config_to_json(c)), c);
}

TEST(Config, RejectsBadFields) {
  auto with = [](const char* key, Json value) {
    Json raw = minimal_config();
    raw[key] = std::move(value);
    return raw;
  };
  EXPECT_EQ(kind_of([&] { validate_config(with("languages", {"en"})); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([&] { validate_config(with("languages", {"en", "en"})); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([&] { validate_config(with("languages", {"en", "eng"})); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([&] { validate_config(with("domains", {"books"})); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([&] { validate_config(with("entities_per_domain", 0)); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([&] { validate_config(with("knowledge_cutoff", "soon")); }), ErrorKind::kValidation);
  Json no_range = minimal_config();
  no_range.erase("time_range");
  EXPECT_EQ(kind_of([&] { validate_config(no_range); }), ErrorKind::kValidation);
}

TEST(Config, RangeBeforeWindowIsATemporalConflict) {
  Json raw = minimal_config();
  raw["time_range"]["start"] = "2024-11-30";
  try {
    validate_config(raw);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTemporalConflict);
    EXPECT_NE(e.detail().find("2024-12-01"), std::string::npos);
  }
}

TEST(Config, LoadsCommentsAndResolvesRelativePaths) {
  TempDir dir;
  io::write_file(dir / "c.json", "// run config\n" + minimal_config().dump(2));
  const PipelineConfig c = load_config(dir / "c.json");
  EXPECT_EQ(c.resolve("fixtures/a.json"), dir.path() / "fixtures/a.json");
  EXPECT_EQ(c.resolve("/abs"), std::filesystem::path("/abs"));
  EXPECT_EQ(kind_of([&] { load_config(dir / "missing.json"); }), ErrorKind::kValidation);
}

}  // namespace
}  // namespace tbench

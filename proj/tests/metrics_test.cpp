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

#include <cmath>

#include "core/error.hpp"
#include "eval/metrics.hpp"
#include "metric_oracle.hpp"
#include "test_util.hpp"

namespace tbench::eval {
namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInternal;
}

ContingencyMatrix matrix(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return ContingencyMatrix{"en", "ja", a, b, c, d};
}

TEST(AnswerLetter, FirstStandaloneCapital) {
  EXPECT_EQ(parse_answer_letter("Answer: C"), OptionLetter::kC);
  EXPECT_EQ(parse_answer_letter("(B) is right"), OptionLetter::kB);
  EXPECT_EQ(parse_answer_letter("D."), OptionLetter::kD);
  EXPECT_EQ(parse_answer_letter("ABBA sang it, so A"), OptionLetter::kA);
  EXPECT_EQ(parse_answer_letter("Option B or C"), OptionLetter::kB);
  EXPECT_EQ(parse_answer_letter("答えはC"), OptionLetter::kC);
  EXPECT_FALSE(parse_answer_letter("I think a"));
  EXPECT_FALSE(parse_answer_letter("Bob and Carla"));
  EXPECT_FALSE(parse_answer_letter("E"));
  EXPECT_FALSE(parse_answer_letter("A1 B2"));
  EXPECT_FALSE(parse_answer_letter(""));
}

TEST(AnswerLetter, Grading) {
  const FactQA qa = testing::sample_qa();
  EXPECT_TRUE(grade_answer("A", qa).correct);
  const Grade wrong = grade_answer("Answer: B", qa);
  EXPECT_FALSE(wrong.correct);
  EXPECT_EQ(wrong.predicted, OptionLetter::kB);
  const Grade none = grade_answer("no idea", qa);
  EXPECT_FALSE(none.correct);
  EXPECT_FALSE(none.predicted);
}

TEST(Contingency, CellsAndCoverage) {
  const GradedSet train{{"q1", true}, {"q2", true}, {"q3", false}, {"q4", false}, {"q5", true}, {"q6", true}};
  const GradedSet test{{"q1", true}, {"q2", false}, {"q3", true}, {"q4", false}, {"q7", true}};
  Coverage cov;
  const ContingencyMatrix m = build_contingency("en", train, "ja", test, &cov);
  EXPECT_EQ(m, (ContingencyMatrix{"en", "ja", 1, 1, 1, 1}));
  EXPECT_EQ(cov, (Coverage{4, 2, 1}));
}

TEST(Contingency, Preconditions) {
  const GradedSet s{{"q1", true}};
  EXPECT_EQ(kind_of([&] { build_contingency("en", s, "en", s); }), ErrorKind::kPrecondition);
  EXPECT_EQ(kind_of([&] { build_contingency("en", s, "ja", GradedSet{{"q2", true}}); }), ErrorKind::kEmptyJoin);
}

TEST(Scores, SpotValues) {
  const ContingencyMatrix m = matrix(2, 1, 1, 1);
  EXPECT_NEAR(overall_score(m), 0.4, 1e-12);
  EXPECT_NEAR(transfer_score(m), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(overall_score(matrix(10, 0, 0, 0)), 1.0);
  EXPECT_DOUBLE_EQ(transfer_score(matrix(10, 0, 0, 0)), 1.0);
  EXPECT_DOUBLE_EQ(overall_score(matrix(0, 0, 3, 4)), 0.0);
  EXPECT_FALSE(try_transfer_score(matrix(0, 0, 3, 4)));
  EXPECT_EQ(kind_of([] { transfer_score(matrix(0, 0, 3, 4)); }), ErrorKind::kNoSourceCorrect);
  EXPECT_EQ(kind_of([] { overall_score(matrix(0, 0, 0, 0)); }), ErrorKind::kEmptyMatrix);
}

TEST(Scores, MatchTheOracleAndTransferNeverTrailsOverall) {
  std::mt19937_64 rng(20250901);
  for (int trial = 0; trial < 300; ++trial) {
    const auto bench = testing::random_bench(rng);
    for (std::size_t i = 0; i < bench.languages.size(); ++i) {
      for (std::size_t j = 0; j < bench.languages.size(); ++j) {
        if (i == j) continue;
        const auto want = testing::oracle_scores(bench.columns[i], bench.columns[j]);
        const ContingencyMatrix m = build_contingency(bench.languages[i], testing::graded_set(bench.columns[i]),
                                                      bench.languages[j], testing::graded_set(bench.columns[j]));
        ASSERT_EQ(m, (ContingencyMatrix{bench.languages[i], bench.languages[j], want.a, want.b, want.c, want.d}));
        ASSERT_NEAR(overall_score(m), want.overall, 1e-12);
        ASSERT_EQ(try_transfer_score(m).has_value(), want.transfer.has_value());
        if (want.transfer) {
          ASSERT_NEAR(*try_transfer_score(m), *want.transfer, 1e-12);
          ASSERT_GE(*try_transfer_score(m), overall_score(m));
        }
      }
    }
  }
}

TEST(Aggregate, PopulationStd) {
  const Aggregate a = aggregate({0.0, 1.0});
  EXPECT_DOUBLE_EQ(a.mean, 0.5);
  EXPECT_DOUBLE_EQ(a.std, 0.5);
  EXPECT_EQ(a.n, 2u);
  const Aggregate b = aggregate({0.2, std::nullopt, 0.4, 0.9});
  EXPECT_NEAR(b.mean, 0.5, 1e-12);
  EXPECT_NEAR(b.std, std::sqrt((0.09 + 0.01 + 0.16) / 3.0), 1e-12);
  EXPECT_EQ(b.excluded, 1u);
  EXPECT_EQ(aggregate({0.7}).std, 0.0);
  EXPECT_EQ(kind_of([] { aggregate({std::nullopt}); }), ErrorKind::kNothingToAggregate);
  EXPECT_EQ(kind_of([] { aggregate({}); }), ErrorKind::kNothingToAggregate);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(2.0 / 3.0), "0.6666666666666666");
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

}  // namespace
}  // namespace tbench::eval

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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"

namespace tbench::eval {

// First standalone capital A-D: neither neighbour is an ASCII letter or digit.
std::optional<OptionLetter> parse_answer_letter(std::string_view raw);

struct Grade {
  std::optional<OptionLetter> predicted;
  bool correct = false;
};
Grade grade_answer(std::string_view raw, const FactQA& qa);

struct ContingencyMatrix {
  LanguageCode train_language;
  LanguageCode test_language;
  std::uint64_t a = 0;  // correct in both
  std::uint64_t b = 0;  // correct in train language only
  std::uint64_t c = 0;  // correct in test language only
  std::uint64_t d = 0;  // wrong in both

  std::uint64_t total() const { return a + b + c + d; }
  bool operator==(const ContingencyMatrix&) const = default;
};

struct Coverage {
  std::size_t joined = 0;
  std::size_t train_only = 0;  // graded in the train language but not the test language
  std::size_t test_only = 0;

  bool operator==(const Coverage&) const = default;
};

// base qa_id -> graded correct
using GradedSet = std::map<std::string, bool>;

// Joins on base qa_id. Throws Error(kPrecondition) when the languages match and
// Error(kEmptyJoin) when nothing is shared.
ContingencyMatrix build_contingency(const LanguageCode& train_language, const GradedSet& train,
                                    const LanguageCode& test_language, const GradedSet& test,
                                    Coverage* coverage = nullptr);

// A / (A+B+C+D); Error(kEmptyMatrix) on an empty matrix.
double overall_score(const ContingencyMatrix& m);
// A / (A+B); Error(kNoSourceCorrect) when A+B = 0.
double transfer_score(const ContingencyMatrix& m);
// Same as transfer_score with the undefined case as nullopt.
std::optional<double> try_transfer_score(const ContingencyMatrix& m);

struct Aggregate {
  double mean = 0.0;
  double std = 0.0;  // population (N divisor)
  std::size_t n = 0;
  std::size_t excluded = 0;  // undefined scores left out

  bool operator==(const Aggregate&) const = default;
};

// Mean and population standard deviation over the defined scores. Throws
// Error(kNothingToAggregate) when none is defined.
Aggregate aggregate(const std::vector<std::optional<double>>& scores);

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace tbench::eval

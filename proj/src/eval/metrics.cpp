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


#include "eval/metrics.hpp"

#include <charconv>
#include <cmath>

#include "core/error.hpp"

namespace tbench::eval {
namespace {

bool is_word_char(unsigned char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

}  // namespace

std::optional<OptionLetter> parse_answer_letter(std::string_view raw) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char ch = raw[i];
    if (ch < 'A' || ch > 'D') continue;
    const bool left = i == 0 || !is_word_char(static_cast<unsigned char>(raw[i - 1]));
    const bool right = i + 1 == raw.size() || !is_word_char(static_cast<unsigned char>(raw[i + 1]));
    if (left && right) return static_cast<OptionLetter>(ch - 'A');
  }
  return std::nullopt;
}

Grade grade_answer(std::string_view raw, const FactQA& qa) {
  Grade g;
  g.predicted = parse_answer_letter(raw);
  g.correct = g.predicted && *g.predicted == qa.correct_option;
  return g;
}

ContingencyMatrix build_contingency(const LanguageCode& train_language, const GradedSet& train,
                                    const LanguageCode& test_language, const GradedSet& test, Coverage* coverage) {
  if (train_language == test_language) {
    throw Error(ErrorKind::kPrecondition, "contingency needs two distinct languages, got " + train_language + " twice");
  }
  ContingencyMatrix m{train_language, test_language};
  Coverage cov;
  for (const auto& [id, src] : train) {
    const auto it = test.find(id);
    if (it == test.end()) {
      ++cov.train_only;
      continue;
    }
    ++cov.joined;
    const bool tgt = it->second;
    if (src && tgt) ++m.a;
    else if (src) ++m.b;
    else if (tgt) ++m.c;
    else ++m.d;
  }
  cov.test_only = test.size() - cov.joined;
  if (coverage) *coverage = cov;
  if (cov.joined == 0) {
    throw Error(ErrorKind::kEmptyJoin, train_language + " -> " + test_language + ": no shared qa ids");
  }
  return m;
}

double overall_score(const ContingencyMatrix& m) {
  if (m.total() == 0) throw Error(ErrorKind::kEmptyMatrix, m.train_language + " -> " + m.test_language);
  return static_cast<double>(m.a) / static_cast<double>(m.total());
}

std::optional<double> try_transfer_score(const ContingencyMatrix& m) {
  if (m.a + m.b == 0) return std::nullopt;
  return static_cast<double>(m.a) / static_cast<double>(m.a + m.b);
}

double transfer_score(const ContingencyMatrix& m) {
  const auto t = try_transfer_score(m);
  if (!t) throw Error(ErrorKind::kNoSourceCorrect, m.train_language + " -> " + m.test_language);
  return *t;
}

Aggregate aggregate(const std::vector<std::optional<double>>& scores) {
  Aggregate out;
  double sum = 0.0;
  for (const auto& s : scores) {
    if (!s) {
      ++out.excluded;
      continue;
    }
    sum += *s;
    ++out.n;
  }
  if (out.n == 0) throw Error(ErrorKind::kNothingToAggregate, std::to_string(out.excluded) + " undefined scores");
  out.mean = sum / static_cast<double>(out.n);
  double ss = 0.0;
  for (const auto& s : scores) {
    if (s) ss += (*s - out.mean) * (*s - out.mean);
  }
  out.std = std::sqrt(ss / static_cast<double>(out.n));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace tbench::eval

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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/date.hpp"

namespace tbench {

using Json = nlohmann::json;
using LanguageCode = std::string;

enum class Domain { kMovie, kMusic, kSports };

std::string_view domain_name(Domain d);
Domain parse_domain(std::string_view name);
inline constexpr std::array<Domain, 3> kAllDomains{Domain::kMovie, Domain::kMusic, Domain::kSports};

enum class OptionLetter : std::uint8_t { kA = 0, kB = 1, kC = 2, kD = 3 };

inline constexpr std::array<OptionLetter, 4> kLetters{OptionLetter::kA, OptionLetter::kB,
                                                      OptionLetter::kC, OptionLetter::kD};
char letter_char(OptionLetter l);
std::optional<OptionLetter> parse_letter(std::string_view s);

struct KnowledgeEntity {
  std::string entity_id;
  Domain domain = Domain::kMovie;
  std::string display_name;
  Date occurrence_date;
  Json payload;  // provider record, opaque outside the providers module

  bool operator==(const KnowledgeEntity&) const = default;
};

struct SourceDocument {
  std::string entity_id;
  LanguageCode language;
  std::string text;
  std::string template_id;  // movie | music | soccer | baseball

  bool operator==(const SourceDocument&) const = default;
};

enum class QaStatus { kGenerated, kVerified, kRejected };
std::string_view status_name(QaStatus s);
QaStatus parse_status(std::string_view s);

struct FactQA {
  std::string qa_id;
  std::string base_qa_id;
  std::string entity_id;
  LanguageCode language;
  std::string question;
  std::array<std::string, 4> options;
  OptionLetter correct_option = OptionLetter::kA;
  QaStatus status = QaStatus::kGenerated;
  std::optional<std::string> source_sentence;

  const std::string& option(OptionLetter l) const { return options[static_cast<std::size_t>(l)]; }
  const std::string& correct_text() const { return option(correct_option); }

  bool operator==(const FactQA&) const = default;
};

// Structural problems of a QA (empty list = valid): non-empty question, four
// non-empty pairwise-distinct options.
std::vector<std::string> fact_qa_problems(const FactQA& qa);

std::string make_base_qa_id(std::string_view entity_id, std::string_view question,
                            const std::array<std::string, 4>& options);
std::string make_qa_id(std::string_view base_id, std::string_view language);

// Per-domain counts carried through the pipeline.
struct Attrition {
  std::size_t fetched = 0;
  std::size_t temporally_valid = 0;
  std::size_t gate_valid = 0;
  std::size_t sampled = 0;
  std::size_t generated = 0;
  std::size_t verified = 0;
  std::size_t translated = 0;

  bool operator==(const Attrition&) const = default;
};

struct GateDecision {
  enum class Verdict { kKnown, kUnknown };
  std::string entity_id;
  std::string probe_text;
  Verdict verdict = Verdict::kUnknown;
  std::string judge_rationale;
  std::vector<std::string> matched_facts;
  std::string error;  // set when a per-entity failure forced the discard

  bool operator==(const GateDecision&) const = default;
};

// JSON wire forms. Keys are emitted sorted (nlohmann::json default), so dumps are
// byte-deterministic.
Json to_json(const KnowledgeEntity& e);
KnowledgeEntity entity_from_json(const Json& j);
Json to_json(const SourceDocument& d);
SourceDocument document_from_json(const Json& j);
Json to_json(const FactQA& qa);
FactQA fact_qa_from_json(const Json& j);
Json to_json(const Attrition& a);
Attrition attrition_from_json(const Json& j);
Json to_json(const GateDecision& g);
GateDecision gate_decision_from_json(const Json& j);

inline constexpr int kSchemaVersion = 1;

}  // namespace tbench

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


#include "core/types.hpp"

#include <set>

#include "core/error.hpp"
#include "core/hash.hpp"

namespace tbench {

std::string_view domain_name(Domain d) {
  switch (d) {
    case Domain::kMovie: return "movie";
    case Domain::kMusic: return "music";
    case Domain::kSports: return "sports";
  }
  return "movie";
}

Domain parse_domain(std::string_view name) {
  if (name == "movie") return Domain::kMovie;
  if (name == "music") return Domain::kMusic;
  if (name == "sports") return Domain::kSports;
  throw Error(ErrorKind::kValidation, "unknown domain '" + std::string(name) + "'");
}

char letter_char(OptionLetter l) { return static_cast<char>('A' + static_cast<int>(l)); }

std::optional<OptionLetter> parse_letter(std::string_view s) {
  if (s.size() != 1 || s[0] < 'A' || s[0] > 'D') return std::nullopt;
  return static_cast<OptionLetter>(s[0] - 'A');
}

std::string_view status_name(QaStatus s) {
  switch (s) {
    case QaStatus::kGenerated: return "generated";
    case QaStatus::kVerified: return "verified";
    case QaStatus::kRejected: return "rejected";
  }
  return "generated";
}

QaStatus parse_status(std::string_view s) {
  if (s == "generated") return QaStatus::kGenerated;
  if (s == "verified") return QaStatus::kVerified;
  if (s == "rejected") return QaStatus::kRejected;
  throw Error(ErrorKind::kMalformedRecord, "unknown QA status '" + std::string(s) + "'");
}

std::vector<std::string> fact_qa_problems(const FactQA& qa) {
  std::vector<std::string> problems;
  if (qa.question.empty()) problems.emplace_back("empty question");
  std::set<std::string> seen;
  for (OptionLetter l : kLetters) {
    const std::string& text = qa.option(l);
    if (text.empty()) problems.push_back(std::string("empty option ") + letter_char(l));
    if (!seen.insert(text).second) problems.push_back(std::string("duplicate option ") + letter_char(l));
  }
  return problems;
}

std::string make_base_qa_id(std::string_view entity_id, std::string_view question,
                            const std::array<std::string, 4>& options) {
  FieldHasher h;
  h.add(entity_id).add(question);
  for (const auto& o : options) h.add(o);
  return "q" + h.hex().substr(0, 16);
}

std::string make_qa_id(std::string_view base_id, std::string_view language) {
  return std::string(base_id) + "." + std::string(language);
}

Json to_json(const KnowledgeEntity& e) {
  return Json{{"entity_id", e.entity_id},
              {"domain", domain_name(e.domain)},
              {"display_name", e.display_name},
              {"occurrence_date", format_date(e.occurrence_date)},
              {"payload", e.payload}};
}

KnowledgeEntity entity_from_json(const Json& j) {
  try {
    KnowledgeEntity e;
    e.entity_id = j.at("entity_id").get<std::string>();
    e.domain = parse_domain(j.at("domain").get<std::string>());
    e.display_name = j.at("display_name").get<std::string>();
    e.occurrence_date = parse_full_date(j.at("occurrence_date").get<std::string>());
    e.payload = j.value("payload", Json::object());
    return e;
  } catch (const Json::exception& ex) {
    throw Error(ErrorKind::kMalformedRecord, std::string("entity record: ") + ex.what());
  }
}

Json to_json(const SourceDocument& d) {
  return Json{{"entity_id", d.entity_id},
              {"language", d.language},
              {"text", d.text},
              {"template_id", d.template_id},
              {"schema_version", kSchemaVersion}};
}

SourceDocument document_from_json(const Json& j) {
  try {
    return SourceDocument{j.at("entity_id").get<std::string>(), j.at("language").get<std::string>(),
                          j.at("text").get<std::string>(), j.at("template_id").get<std::string>()};
  } catch (const Json::exception& ex) {
    throw Error(ErrorKind::kMalformedRecord, std::string("document record: ") + ex.what());
  }
}

Json to_json(const FactQA& qa) {
  Json options = Json::object();
  for (OptionLetter l : kLetters) options[std::string(1, letter_char(l))] = qa.option(l);
  Json j{{"qa_id", qa.qa_id},
         {"base_qa_id", qa.base_qa_id},
         {"entity_id", qa.entity_id},
         {"language", qa.language},
         {"question", qa.question},
         {"options", options},
         {"correct_option", std::string(1, letter_char(qa.correct_option))},
         {"status", status_name(qa.status)},
         {"schema_version", kSchemaVersion}};
  if (qa.source_sentence) j["source_sentence"] = *qa.source_sentence;
  return j;
}

FactQA fact_qa_from_json(const Json& j) {
  try {
    FactQA qa;
    qa.qa_id = j.at("qa_id").get<std::string>();
    qa.base_qa_id = j.at("base_qa_id").get<std::string>();
    qa.entity_id = j.at("entity_id").get<std::string>();
    qa.language = j.at("language").get<std::string>();
    qa.question = j.at("question").get<std::string>();
    const Json& opts = j.at("options");
    if (!opts.is_object() || opts.size() != 4) {
      throw Error(ErrorKind::kMalformedRecord, "QA " + qa.qa_id + " must have exactly four options");
    }
    for (OptionLetter l : kLetters) {
      qa.options[static_cast<std::size_t>(l)] = opts.at(std::string(1, letter_char(l))).get<std::string>();
    }
    const auto letter = parse_letter(j.at("correct_option").get<std::string>());
    if (!letter) throw Error(ErrorKind::kMalformedRecord, "QA " + qa.qa_id + " has invalid correct_option");
    qa.correct_option = *letter;
    qa.status = parse_status(j.at("status").get<std::string>());
    if (j.contains("source_sentence")) qa.source_sentence = j.at("source_sentence").get<std::string>();
    return qa;
  } catch (const Json::exception& ex) {
    throw Error(ErrorKind::kMalformedRecord, std::string("QA record: ") + ex.what());
  }
}

Json to_json(const Attrition& a) {
  return Json{{"fetched", a.fetched},     {"temporally_valid", a.temporally_valid},
              {"gate_valid", a.gate_valid}, {"sampled", a.sampled},
              {"generated", a.generated}, {"verified", a.verified},
              {"translated", a.translated}};
}

Attrition attrition_from_json(const Json& j) {
  Attrition a;
  a.fetched = j.value("fetched", std::size_t{0});
  a.temporally_valid = j.value("temporally_valid", std::size_t{0});
  a.gate_valid = j.value("gate_valid", std::size_t{0});
  a.sampled = j.value("sampled", std::size_t{0});
  a.generated = j.value("generated", std::size_t{0});
  a.verified = j.value("verified", std::size_t{0});
  a.translated = j.value("translated", std::size_t{0});
  return a;
}

Json to_json(const GateDecision& g) {
  Json j{{"entity_id", g.entity_id},
         {"probe_text", g.probe_text},
         {"verdict", g.verdict == GateDecision::Verdict::kKnown ? "Known" : "Unknown"},
         {"judge_rationale", g.judge_rationale},
         {"matched_facts", g.matched_facts}};
  if (!g.error.empty()) j["error"] = g.error;
  return j;
}

GateDecision gate_decision_from_json(const Json& j) {
  GateDecision g;
  g.entity_id = j.at("entity_id").get<std::string>();
  g.probe_text = j.value("probe_text", "");
  g.verdict = j.at("verdict").get<std::string>() == "Known" ? GateDecision::Verdict::kKnown
                                                            : GateDecision::Verdict::kUnknown;
  g.judge_rationale = j.value("judge_rationale", "");
  g.matched_facts = j.value("matched_facts", std::vector<std::string>{});
  g.error = j.value("error", "");
  return g;
}

}  // namespace tbench

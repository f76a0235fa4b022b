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


#include "qa/qa_pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "core/error.hpp"
#include "core/log.hpp"
#include "core/text.hpp"
#include "llm/json_extract.hpp"
#include "providers/documents.hpp"

namespace tbench::qa {
namespace {

std::optional<FactQA> parse_item(const Json& item, const SourceDocument& doc, const LanguageCode& lang,
                                 std::string& why) {
  if (!item.is_object()) {
    why = "item is not an object";
    return std::nullopt;
  }
  if (!item.contains("question") || !item.at("question").is_string()) {
    why = "missing question";
    return std::nullopt;
  }
  if (!item.contains("options") || !item.at("options").is_object()) {
    why = "missing options object";
    return std::nullopt;
  }
  const Json& opts = item.at("options");
  if (opts.size() != 4) {
    why = "expected 4 options, got " + std::to_string(opts.size());
    return std::nullopt;
  }
  FactQA qa;
  for (OptionLetter l : kLetters) {
    const std::string key(1, letter_char(l));
    if (!opts.contains(key) || !opts.at(key).is_string()) {
      why = "option " + key + " missing or not a string";
      return std::nullopt;
    }
    qa.options[static_cast<std::size_t>(l)] = text::trim(opts.at(key).get<std::string>());
  }
  const auto letter = item.contains("correct_option") && item.at("correct_option").is_string()
                          ? parse_letter(text::trim(item.at("correct_option").get<std::string>()))
                          : std::nullopt;
  if (!letter) {
    why = "correct_option is not one of A-D";
    return std::nullopt;
  }
  qa.correct_option = *letter;
  qa.question = text::trim(item.at("question").get<std::string>());
  const auto problems = fact_qa_problems(qa);
  if (!problems.empty()) {
    why = text::join(problems, "; ");
    return std::nullopt;
  }
  qa.entity_id = doc.entity_id;
  qa.language = lang;
  qa.status = QaStatus::kGenerated;
  qa.base_qa_id = make_base_qa_id(qa.entity_id, qa.question, qa.options);
  qa.qa_id = make_qa_id(qa.base_qa_id, lang);
  return qa;
}

}  // namespace

GenerationResult generate_qas(llm::Gateway& generator, const SourceDocument& document, const LanguageCode& pivot,
                              int n, const llm::DecodingParams& decoding) {
  if (n < 1) throw Error(ErrorKind::kPrecondition, "generate_qas: n must be >= 1");
  llm::LlmRequest req;
  req.template_id = llm::PromptId::kQaGenerate;
  req.variant = std::string(domain_name(providers::template_domain(document.template_id)));
  req.bindings = {{"lang", pivot}, {"meta_data", document.text}};
  req.decoding = decoding;
  req.endpoint_id = "generator";

  GenerationResult result;
  Json items;
  std::string last_error;
  for (int attempt = 1; attempt <= 2 && items.is_null(); ++attempt) {
    ++result.calls;
    try {
      const Json j = llm::extract_json(generator.complete(req).raw_text);
      if (!j.contains("QA") || !j.at("QA").is_array()) {
        throw Error(ErrorKind::kJsonMalformed, "output lacks a QA array");
      }
      items = j.at("QA");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kJsonNotFound && e.kind() != ErrorKind::kJsonMalformed) throw;
      last_error = e.what();
      log::warn("qa generation for " + document.entity_id + " attempt " + std::to_string(attempt) + ": " + last_error);
    }
  }
  if (items.is_null()) {
    throw Error(ErrorKind::kGenerationFailed, "entity " + document.entity_id + ": " + last_error);
  }

  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::string why;
    auto qa = parse_item(items[i], document, pivot, why);
    if (qa && !seen.insert(qa->base_qa_id).second) {
      qa.reset();
      why = "duplicate of an earlier item";
    }
    if (!qa) {
      log::info("qa generation for " + document.entity_id + ": dropped item " + std::to_string(i) + " (" + why + ")");
      result.dropped.push_back({i, why});
      continue;
    }
    if (static_cast<int>(result.qas.size()) < n) result.qas.push_back(std::move(*qa));
  }
  return result;
}

FactQA shuffle_options(const FactQA& qa, RunRng& rng) {
  std::vector<std::size_t> perm{0, 1, 2, 3};
  rng.shuffle(perm);
  FactQA out = qa;
  for (std::size_t i = 0; i < 4; ++i) {
    out.options[i] = qa.options[perm[i]];
    if (perm[i] == static_cast<std::size_t>(qa.correct_option)) out.correct_option = static_cast<OptionLetter>(i);
  }
  return out;
}

Json qa_payload(const FactQA& qa) {
  Json options = Json::object();
  for (OptionLetter l : kLetters) options[std::string(1, letter_char(l))] = qa.option(l);
  return Json{{"question", qa.question},
              {"options", options},
              {"correct_option", std::string(1, letter_char(qa.correct_option))}};
}

VerifierVerdict verify_qa(llm::Gateway& verifier, const FactQA& qa, const SourceDocument& document,
                          const llm::DecodingParams& decoding) {
  if (qa.status != QaStatus::kGenerated) {
    throw Error(ErrorKind::kPrecondition, "verify_qa: " + qa.qa_id + " is not in generated state");
  }
  VerifierVerdict v;
  v.qa_id = qa.qa_id;
  llm::LlmRequest req;
  req.template_id = llm::PromptId::kQaVerify;
  req.bindings = {{"meta_data", document.text}, {"qa", qa_payload(qa).dump(2)}};
  req.decoding = decoding;
  req.endpoint_id = "judge";

  Json j;
  try {
    j = llm::extract_json(verifier.complete(req).raw_text);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kJsonNotFound && e.kind() != ErrorKind::kJsonMalformed) throw;
    v.note = std::string("judge output unparseable: ") + e.what();
    return v;
  }
  if (!j.contains("Decision") || !j.at("Decision").is_string()) {
    v.note = "judge output lacks a Decision";
    return v;
  }
  const std::string decision = text::casefold(text::trim(j.at("Decision").get<std::string>()));
  if (decision != "supported") {
    if (decision != "unsupported") v.note = "unrecognized decision '" + j.at("Decision").get<std::string>() + "'";
    return v;
  }
  const std::string sentence =
      j.contains("SourceSentence") && j.at("SourceSentence").is_string() ? text::trim(j.at("SourceSentence").get<std::string>()) : "";
  const auto parts = text::split_sentences(sentence);
  const bool grounded = !parts.empty() && std::all_of(parts.begin(), parts.end(), [&](const std::string& s) {
    return text::normalized_contains(document.text, s);
  });
  if (!grounded) {
    v.note = "cited sentence not found in document; downgraded";
    return v;
  }
  v.decision = VerifierVerdict::Decision::kSupported;
  v.source_sentence = sentence;
  return v;
}

std::vector<FactQA> filter_verified(const std::vector<FactQA>& qas, const std::vector<VerifierVerdict>& verdicts) {
  std::map<std::string, const VerifierVerdict*> by_id;
  for (const auto& v : verdicts) by_id[v.qa_id] = &v;
  std::vector<FactQA> out;
  for (const auto& qa : qas) {
    const auto it = by_id.find(qa.qa_id);
    if (it == by_id.end()) throw Error(ErrorKind::kPrecondition, "filter_verified: no verdict for " + qa.qa_id);
    if (it->second->decision != VerifierVerdict::Decision::kSupported) continue;
    FactQA v = qa;
    v.status = QaStatus::kVerified;
    v.source_sentence = it->second->source_sentence;
    out.push_back(std::move(v));
  }
  return out;
}

const std::vector<RubricCriterion>& audit_rubric() {
  static const std::vector<RubricCriterion> kRubric{
      {"UNRELATED", "The question has nothing to do with the source document."},
      {"TOO_GENERAL", "The question relates to the document but is generic; it does not single out this entity."},
      {"UNVERIFIABLE", "The source document does not let you check whether the marked answer is right."},
      {"WRONG_ANSWER", "The source document settles the question, but the marked answer contradicts it."},
  };
  return kRubric;
}

std::size_t audit_sample_size(std::size_t n, double fraction) {
  // Guard against products like 0.2 * 175 landing a hair above an integer.
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
}

Json export_audit_sample(const std::vector<FactQA>& qas, const std::map<std::string, SourceDocument>& documents,
                         double fraction, RunRng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::kUsage, "audit fraction must be in (0, 1], got " + std::to_string(fraction));
  }
  std::vector<std::size_t> idx(qas.size());
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(idx);
  idx.resize(std::min(idx.size(), audit_sample_size(qas.size(), fraction)));
  std::sort(idx.begin(), idx.end());

  Json rubric = Json::array();
  for (const auto& c : audit_rubric()) rubric.push_back(Json{{"code", c.code}, {"description", c.description}});
  Json items = Json::array();
  for (std::size_t i : idx) {
    const FactQA& qa = qas[i];
    const auto doc = documents.find(qa.entity_id);
    Json violations = Json::object();
    for (const auto& c : audit_rubric()) violations[c.code] = nullptr;
    items.push_back(Json{{"qa", to_json(qa)},
                         {"document", doc == documents.end() ? Json(nullptr) : Json(doc->second.text)},
                         {"violations", violations},
                         {"verdict", ""}});
  }
  return Json{{"fraction", fraction},
              {"population", qas.size()},
              {"sample_size", idx.size()},
              {"rubric", rubric},
              {"instructions", "Mark each criterion true or false, then set verdict to PASS when no criterion "
                               "is violated and FAIL otherwise."},
              {"items", items}};
}

std::string audit_csv(const Json& bundle) {
  auto cell = [](const std::string& v) {
    if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::vector<std::string> header{"qa_id", "entity_id", "language", "question", "A", "B", "C", "D", "correct_option",
                                  "source_sentence"};
  for (const auto& c : audit_rubric()) header.push_back(c.code);
  header.push_back("verdict");
  std::string out = text::join(header, ",") + "\n";
  for (const auto& item : bundle.at("items")) {
    const FactQA qa = fact_qa_from_json(item.at("qa"));
    std::vector<std::string> row{qa.qa_id, qa.entity_id, qa.language, qa.question};
    for (const auto& o : qa.options) row.push_back(o);
    row.emplace_back(1, letter_char(qa.correct_option));
    row.push_back(qa.source_sentence.value_or(""));
    for (std::size_t i = 0; i < audit_rubric().size(); ++i) row.emplace_back();
    row.emplace_back();
    for (auto& v : row) v = cell(v);
    out += text::join(row, ",") + "\n";
  }
  return out;
}

}  // namespace tbench::qa

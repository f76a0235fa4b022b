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


#include "translate/translator.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"
#include "core/log.hpp"
#include "core/placeholder.hpp"
#include "core/text.hpp"
#include "llm/json_extract.hpp"
#include "llm/prompts.hpp"
#include "providers/documents.hpp"
#include "qa/qa_pipeline.hpp"

namespace tbench::translate {
namespace {

const std::set<std::string> kQaKeys{"correct_option", "options", "question"};
const std::set<std::string> kOptionKeys{"A", "B", "C", "D"};

std::set<std::string> key_set(const Json& j) {
  std::set<std::string> out;
  for (const auto& [k, v] : j.items()) out.insert(k);
  return out;
}

std::vector<Violation> finish(std::set<Violation> s) { return {s.begin(), s.end()}; }

bool has_name_loss(const std::string& original, const std::string& translated, const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (!n.empty() && original.find(n) != std::string::npos && translated.find(n) == std::string::npos) return true;
  }
  return false;
}

// Label of a line, longest match first so "Match Stats (" wins over "Match: ".
std::string label_of(const std::string& line, const std::vector<std::string>& labels) {
  std::string best;
  for (const auto& l : labels) {
    if (line.rfind(l, 0) == 0 && l.size() > best.size()) best = l;
  }
  return best;
}

bool is_subsequence(const std::vector<std::string>& small, const std::vector<std::string>& big) {
  std::size_t j = 0;
  for (const auto& s : big) {
    if (j < small.size() && small[j] == s) ++j;
  }
  return j == small.size();
}

}  // namespace

std::string_view violation_code(Violation v) {
  switch (v) {
    case Violation::kKeySetMismatch: return "KEY_SET_MISMATCH";
    case Violation::kOptionCount: return "OPTION_COUNT";
    case Violation::kCorrectOptionChanged: return "CORRECT_OPTION_CHANGED";
    case Violation::kEmptyValue: return "EMPTY_VALUE";
    case Violation::kDuplicateOption: return "DUPLICATE_OPTION";
    case Violation::kLabelChanged: return "LABEL_CHANGED";
    case Violation::kLineStructure: return "LINE_STRUCTURE";
    case Violation::kNameDropped: return "NAME_DROPPED";
    case Violation::kUnparseable: return "UNPARSEABLE";
  }
  return "UNKNOWN";
}

std::string join_codes(const std::vector<Violation>& vs) {
  std::vector<std::string> parts;
  for (Violation v : vs) parts.emplace_back(violation_code(v));
  return text::join(parts, ",");
}

std::vector<Violation> check_qa_integrity(const Json& original, const Json& translated,
                                          const std::vector<std::string>& names) {
  std::set<Violation> out;
  if (!translated.is_object()) return {Violation::kKeySetMismatch};
  if (key_set(translated) != kQaKeys) out.insert(Violation::kKeySetMismatch);

  if (translated.contains("correct_option") && translated.at("correct_option") != original.at("correct_option")) {
    out.insert(Violation::kCorrectOptionChanged);
  }

  auto check_string = [&](const Json& j) {
    if (!j.is_string() || text::trim(j.get<std::string>()).empty()) out.insert(Violation::kEmptyValue);
  };
  auto names_kept = [&](const Json& before, const Json& after) {
    if (before.is_string() && after.is_string() && has_name_loss(before.get<std::string>(), after.get<std::string>(), names)) {
      out.insert(Violation::kNameDropped);
    }
  };

  if (translated.contains("question")) {
    check_string(translated.at("question"));
    names_kept(original.at("question"), translated.at("question"));
  }
  if (translated.contains("options")) {
    const Json& opts = translated.at("options");
    if (!opts.is_object()) {
      out.insert(Violation::kKeySetMismatch);
    } else {
      if (opts.size() != 4) {
        out.insert(Violation::kOptionCount);
      } else if (key_set(opts) != kOptionKeys) {
        out.insert(Violation::kKeySetMismatch);
      }
      std::set<std::string> seen;
      for (const auto& [k, v] : opts.items()) {
        check_string(v);
        if (v.is_string() && !seen.insert(text::trim(v.get<std::string>())).second) {
          out.insert(Violation::kDuplicateOption);
        }
        if (original.at("options").contains(k)) names_kept(original.at("options").at(k), v);
      }
    }
  }
  return finish(std::move(out));
}

std::vector<Violation> check_document_integrity(std::string_view template_id, const std::string& original,
                                                const std::string& translated,
                                                const std::vector<std::string>& names) {
  std::set<Violation> out;
  const auto labels = providers::template_labels(template_id);
  const auto a = text::split_lines(original);
  const auto b = text::split_lines(translated);

  if (a.size() == b.size()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string la = label_of(a[i], labels);
      if (la != label_of(b[i], labels) || (la.empty() && a[i].empty() != b[i].empty())) {
        out.insert(Violation::kLabelChanged);
        continue;
      }
      if (!text::trim(a[i].substr(la.size())).empty() && text::trim(b[i].substr(la.size())).empty()) {
        out.insert(Violation::kEmptyValue);
      }
    }
  } else {
    out.insert(Violation::kLineStructure);
    std::vector<std::string> la, lb;
    for (const auto& l : a) {
      if (auto s = label_of(l, labels); !s.empty()) la.push_back(s);
    }
    for (const auto& l : b) {
      if (auto s = label_of(l, labels); !s.empty()) lb.push_back(s);
    }
    // A dropped line removes a label; only a label that is not in the
    // original's sequence counts as changed.
    if (!is_subsequence(lb, la)) out.insert(Violation::kLabelChanged);
  }
  if (has_name_loss(original, translated, names)) out.insert(Violation::kNameDropped);
  return finish(std::move(out));
}

Json to_json(const TranslationRecord& r) {
  Json codes = Json::array();
  for (Violation v : r.integrity) codes.push_back(violation_code(v));
  return Json{{"schema_version", kSchemaVersion},
              {"kind", r.kind},
              {"id", r.id},
              {"source_language", r.source_language},
              {"target_language", r.target_language},
              {"attempt", r.attempt},
              {"before", r.before},
              {"after", r.after},
              {"integrity", codes}};
}

QaTranslation translate_qa(llm::Gateway& translator, const FactQA& qa, const LanguageCode& target,
                           const std::vector<std::string>& names, const llm::DecodingParams& decoding) {
  if (qa.status != QaStatus::kVerified) {
    throw Error(ErrorKind::kPrecondition, "translate_qa: " + qa.qa_id + " is not verified");
  }
  if (qa.language == target) {
    throw Error(ErrorKind::kPrecondition, "translate_qa: " + qa.qa_id + " is already in " + target);
  }
  const Json before = qa::qa_payload(qa);
  llm::LlmRequest req;
  req.template_id = llm::PromptId::kQaTranslate;
  req.bindings = {{"lang", target}, {"qa_json", before.dump(2)}};
  req.decoding = decoding;
  req.endpoint_id = "generator";

  QaTranslation result;
  for (int attempt = 1; attempt <= 2; ++attempt) {
    TranslationRecord rec{"qa", qa.base_qa_id, qa.language, target, attempt, before, nullptr, {}};
    try {
      Json after = llm::extract_json(translator.complete(req).raw_text);
      // Tolerate the model echoing the generation wrapper {"QA": [item]}.
      if (after.contains("QA") && after.at("QA").is_array() && after.at("QA").size() == 1) after = after.at("QA")[0];
      rec.after = after;
      rec.integrity = check_qa_integrity(before, after, names);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kJsonNotFound && e.kind() != ErrorKind::kJsonMalformed) throw;
      rec.integrity = {Violation::kUnparseable};
    }
    result.attempts.push_back(rec);
    if (rec.clean()) {
      FactQA out = qa;
      out.language = target;
      out.qa_id = make_qa_id(qa.base_qa_id, target);
      out.question = text::trim(rec.after.at("question").get<std::string>());
      for (OptionLetter l : kLetters) {
        out.options[static_cast<std::size_t>(l)] =
            text::trim(rec.after.at("options").at(std::string(1, letter_char(l))).get<std::string>());
      }
      result.qa = std::move(out);
      return result;
    }
    log::warn("translation of " + qa.base_qa_id + " into " + target + " attempt " + std::to_string(attempt) +
              " failed integrity: " + join_codes(rec.integrity));
  }
  log::warn("dropping " + qa.base_qa_id + " from " + target + " after two failed translations");
  return result;
}

DocumentTranslation translate_document(llm::Gateway& translator, const KnowledgeEntity& entity,
                                       const SourceDocument& document, const LanguageCode& target,
                                       const llm::DecodingParams& decoding) {
  if (document.entity_id != entity.entity_id) {
    throw Error(ErrorKind::kPrecondition, "translate_document: document does not belong to " + entity.entity_id);
  }
  if (document.language == target) {
    throw Error(ErrorKind::kPrecondition, "translate_document: " + entity.entity_id + " is already in " + target);
  }
  DocumentTranslation result;
  const auto& fields = llm::translatable_fields(document.template_id);
  if (fields.empty()) {
    SourceDocument copy = document;
    copy.language = target;
    result.document = std::move(copy);
    return result;
  }

  const Bindings source = providers::payload_fields(entity.payload);
  const auto names = providers::entity_names(entity);
  llm::LlmRequest req;
  req.template_id = llm::PromptId::kDocTranslate;
  req.variant = document.template_id;
  req.bindings = {{"lang", target}};
  Json before = Json::object();
  std::set<std::string> expected_keys;
  for (const auto& f : fields) {
    const auto it = source.find(f.field);
    if (it == source.end()) {
      throw Error(ErrorKind::kTemplateFieldMissing, f.field + " (entity " + entity.entity_id + ")");
    }
    req.bindings[f.field] = it->second;
    before[f.json_key] = it->second;
    expected_keys.insert(f.json_key);
  }
  req.decoding = decoding;
  req.endpoint_id = "generator";

  for (int attempt = 1; attempt <= 2; ++attempt) {
    TranslationRecord rec{"document", entity.entity_id, document.language, target, attempt, before, nullptr, {}};
    std::set<Violation> codes;
    std::string rebuilt;
    try {
      const Json j = llm::extract_json(translator.complete(req).raw_text);
      const Json translation = j.contains("translation") ? j.at("translation") : Json();
      rec.after = translation;
      if (!translation.is_object() || key_set(translation) != expected_keys) codes.insert(Violation::kKeySetMismatch);

      Bindings bindings = source;
      std::set<std::string> missing;
      for (const auto& f : fields) {
        if (translation.is_object() && translation.contains(f.json_key) && translation.at(f.json_key).is_string()) {
          bindings[f.field] = translation.at(f.json_key).get<std::string>();
        } else {
          missing.insert(f.field);
        }
      }
      std::vector<std::string> lines;
      for (const auto& line : text::split_lines(providers::document_template(document.template_id))) {
        const bool drop = std::any_of(missing.begin(), missing.end(),
                                      [&](const std::string& m) { return line.find("{" + m + "}") != std::string::npos; });
        if (!drop) lines.push_back(line);
      }
      rebuilt = substitute(text::join(lines, "\n") + "\n", bindings, ErrorKind::kTemplateFieldMissing);
      for (Violation v : check_document_integrity(document.template_id, document.text, rebuilt, names)) codes.insert(v);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kJsonNotFound && e.kind() != ErrorKind::kJsonMalformed) throw;
      codes.insert(Violation::kUnparseable);
    }
    rec.integrity = finish(std::move(codes));
    result.attempts.push_back(rec);
    if (rec.clean()) {
      result.document = SourceDocument{entity.entity_id, target, rebuilt, document.template_id};
      return result;
    }
    log::warn("document translation of " + entity.entity_id + " into " + target + " attempt " +
              std::to_string(attempt) + " failed integrity: " + join_codes(rec.integrity));
  }
  log::warn("no " + target + " document for " + entity.entity_id + " after two failed translations");
  return result;
}

}  // namespace tbench::translate

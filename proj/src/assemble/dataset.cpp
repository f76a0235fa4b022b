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


#include "assemble/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/hash.hpp"
#include "core/io.hpp"
#include "core/log.hpp"
#include "core/text.hpp"

namespace fs = std::filesystem;

namespace tbench::assemble {
namespace {

FactQA normalized(FactQA qa) {
  qa.question = text::nfc(qa.question);
  for (auto& o : qa.options) o = text::nfc(o);
  if (qa.source_sentence) qa.source_sentence = text::nfc(*qa.source_sentence);
  return qa;
}

std::vector<std::string> configured_domains(const BenchmarkDataset& d) {
  std::vector<std::string> out;
  if (d.config.is_object() && d.config.contains("domains") && d.config.at("domains").is_array()) {
    for (const auto& v : d.config.at("domains")) out.push_back(v.get<std::string>());
  }
  if (out.empty()) {
    for (Domain dom : kAllDomains) out.emplace_back(domain_name(dom));
  }
  // Canonical order regardless of how the config listed them.
  std::vector<std::string> ordered;
  for (Domain dom : kAllDomains) {
    if (std::find(out.begin(), out.end(), domain_name(dom)) != out.end()) ordered.emplace_back(domain_name(dom));
  }
  return ordered;
}

std::string rel_docs(const LanguageCode& l) { return "train/" + l + "/docs.jsonl"; }
std::string rel_test(const LanguageCode& l) { return "test/" + l + "/qas.jsonl"; }
constexpr const char* kValidation = "validation/qas.jsonl";
constexpr const char* kEntities = "entities.jsonl";
constexpr const char* kManifest = "manifest.json";

std::string dataset_hash(const Json& files) {
  FieldHasher h;
  for (const auto& [path, info] : files.items()) h.add(path).add(info.at("sha256").get<std::string>());
  return h.hex();
}

}  // namespace

std::map<std::string, Domain> entity_domains(const BenchmarkDataset& dataset) {
  std::map<std::string, Domain> out;
  for (const auto& e : dataset.entities) out[e.entity_id] = e.domain;
  return out;
}

BenchmarkDataset assemble(const AssemblyInput& input, const PipelineConfig& config, AssemblyReport* report) {
  AssemblyReport local;
  AssemblyReport& rep = report ? *report : local;
  const LanguageCode& pivot = config.pivot();

  std::vector<KnowledgeEntity> entities = input.entities;
  std::sort(entities.begin(), entities.end(), [](const KnowledgeEntity& a, const KnowledgeEntity& b) {
    return std::tie(a.domain, a.occurrence_date, a.entity_id) < std::tie(b.domain, b.occurrence_date, b.entity_id);
  });

  BenchmarkDataset d;
  d.config = config_to_json(config);
  d.languages = config.languages;
  d.created_at = input.created_at;
  d.pipeline_version = std::string("tbench ") + TBENCH_VERSION;
  d.attrition = input.attrition;

  std::set<std::string> included;
  for (auto& e : entities) {
    std::vector<std::string> missing;
    for (const auto& l : config.languages) {
      const auto lang = input.documents.find(l);
      if (lang == input.documents.end() || !lang->second.count(e.entity_id)) missing.push_back(l);
    }
    if (!missing.empty()) {
      const Error err(ErrorKind::kIncompleteCoverage,
                      "entity " + e.entity_id + " has no document in " + text::join(missing, ", "));
      log::warn(std::string(err.what()) + "; excluded");
      rep.excluded_entities.push_back(e.entity_id);
      continue;
    }
    included.insert(e.entity_id);
    e.display_name = text::nfc(e.display_name);
    d.entities.push_back(e);
  }
  for (const auto& l : config.languages) {
    auto& docs = d.train_docs[l];
    for (const auto& e : d.entities) {
      SourceDocument doc = input.documents.at(l).at(e.entity_id);
      doc.text = text::nfc(doc.text);
      docs.push_back(std::move(doc));
    }
  }

  // (base id, language) -> QA, first occurrence wins.
  std::map<std::pair<std::string, LanguageCode>, FactQA> by_key;
  std::vector<FactQA> pivot_qas;
  for (const auto& [lang, qas] : input.qas) {
    for (const auto& qa : qas) {
      if (qa.status != QaStatus::kVerified) {
        throw Error(ErrorKind::kPrecondition, "assemble: " + qa.qa_id + " is not verified");
      }
      if (qa.language != lang) {
        throw Error(ErrorKind::kPrecondition, "assemble: " + qa.qa_id + " filed under language " + lang);
      }
      if (!included.count(qa.entity_id)) continue;
      if (!by_key.emplace(std::make_pair(qa.base_qa_id, lang), qa).second) continue;
      if (lang == pivot) pivot_qas.push_back(qa);
    }
  }
  const std::map<std::string, std::size_t> order = [&] {
    std::map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < d.entities.size(); ++i) m[d.entities[i].entity_id] = i;
    return m;
  }();
  std::stable_sort(pivot_qas.begin(), pivot_qas.end(),
                   [&](const FactQA& a, const FactQA& b) { return order.at(a.entity_id) < order.at(b.entity_id); });

  for (const auto& qa : pivot_qas) {
    bool complete = true;
    for (const auto& l : config.target_languages()) complete = complete && by_key.count({qa.base_qa_id, l});
    if (!complete) {
      rep.dropped_base_ids.push_back(qa.base_qa_id);
      continue;
    }
    d.validation.push_back(normalized(qa));
  }
  for (const auto& l : config.target_languages()) {
    for (const auto& qa : d.validation) d.test.push_back(normalized(by_key.at({qa.base_qa_id, l})));
  }

  const auto domains = entity_domains(d);
  for (const auto& dom : configured_domains(d)) d.pre_split[dom] = 0;
  for (const auto& [id, n] : input.generated_per_entity) {
    if (const auto it = domains.find(id); it != domains.end()) d.pre_split[std::string(domain_name(it->second))] += n;
  }
  return d;
}

std::vector<StatsRow> stats(const BenchmarkDataset& dataset) {
  const auto domains = entity_domains(dataset);
  std::vector<StatsRow> rows;
  for (const auto& name : configured_domains(dataset)) {
    StatsRow r;
    r.domain = name;
    const Domain dom = parse_domain(name);
    for (const auto& e : dataset.entities) r.entities += e.domain == dom;
    if (const auto it = dataset.pre_split.find(name); it != dataset.pre_split.end()) r.pre_split = it->second;
    auto in_domain = [&](const FactQA& qa) {
      const auto it = domains.find(qa.entity_id);
      return it != domains.end() && it->second == dom;
    };
    r.validation = static_cast<std::size_t>(std::count_if(dataset.validation.begin(), dataset.validation.end(), in_domain));
    r.test = static_cast<std::size_t>(std::count_if(dataset.test.begin(), dataset.test.end(), in_domain));
    rows.push_back(r);
  }
  StatsRow total;
  total.domain = "Total";
  for (const auto& r : rows) {
    total.entities += r.entities;
    total.pre_split += r.pre_split;
    total.validation += r.validation;
    total.test += r.test;
  }
  rows.push_back(total);
  return rows;
}

std::string stats_csv(const std::vector<StatsRow>& rows) {
  std::ostringstream out;
  out << "domain,entities,pre_split,validation,test\n";
  for (const auto& r : rows) {
    out << r.domain << ',' << r.entities << ',' << r.pre_split << ',' << r.validation << ',' << r.test << '\n';
  }
  return out.str();
}

std::string stats_table(const std::vector<StatsRow>& rows) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%-8s %9s %10s %11s %6s\n", "Domain", "Entities", "Pre-split", "Validation",
                "Test");
  out += line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-8s %9zu %10zu %11zu %6zu\n", r.domain.c_str(), r.entities, r.pre_split,
                  r.validation, r.test);
    out += line;
  }
  return out;
}

Json serialize(const BenchmarkDataset& dataset, const fs::path& out_dir) {
  std::map<std::string, std::string> contents;
  for (const auto& l : dataset.languages) {
    const auto it = dataset.train_docs.find(l);
    const std::vector<SourceDocument> none;
    contents[rel_docs(l)] =
        io::to_jsonl(io::to_json_records(it == dataset.train_docs.end() ? none : it->second,
                                         [](const SourceDocument& d) { return to_json(d); }));
  }
  contents[kValidation] = io::to_jsonl(io::to_json_records(dataset.validation, [](const FactQA& q) { return to_json(q); }));
  for (std::size_t i = 1; i < dataset.languages.size(); ++i) {
    std::vector<FactQA> qas;
    for (const auto& qa : dataset.test) {
      if (qa.language == dataset.languages[i]) qas.push_back(qa);
    }
    contents[rel_test(dataset.languages[i])] = io::to_jsonl(io::to_json_records(qas, [](const FactQA& q) { return to_json(q); }));
  }
  contents[kEntities] = io::to_jsonl(io::to_json_records(dataset.entities, [](const KnowledgeEntity& e) { return to_json(e); }));

  Json files = Json::object();
  for (const auto& [rel, body] : contents) {
    io::write_file(out_dir / rel, body);
    files[rel] = Json{{"sha256", sha256_hex(body)},
                      {"records", static_cast<std::size_t>(std::count(body.begin(), body.end(), '\n'))}};
  }

  Json counts = Json::array();
  for (const auto& r : stats(dataset)) {
    counts.push_back(Json{{"domain", r.domain},
                          {"entities", r.entities},
                          {"pre_split", r.pre_split},
                          {"validation", r.validation},
                          {"test", r.test}});
  }
  Json attrition = Json::object();
  for (const auto& [dom, a] : dataset.attrition) attrition[dom] = to_json(a);

  Json manifest{{"schema_version", kSchemaVersion},
                {"pipeline_version", dataset.pipeline_version},
                {"created_at", dataset.created_at},
                {"config", dataset.config},
                {"languages", dataset.languages},
                {"pivot", dataset.languages.empty() ? "" : dataset.pivot()},
                {"counts", counts},
                {"pre_split", dataset.pre_split},
                {"attrition", attrition},
                {"files", files},
                {"dataset_hash", dataset_hash(files)}};
  io::write_file(out_dir / kManifest, manifest.dump(2) + "\n");
  return manifest;
}

Json verify_manifest(const fs::path& dir) {
  const fs::path path = dir / kManifest;
  if (!fs::exists(path)) throw Error(ErrorKind::kManifestMismatch, "no manifest.json in " + dir.string());
  Json manifest;
  try {
    manifest = Json::parse(io::read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kManifestMismatch, path.string() + ": " + e.what());
  }
  if (!manifest.contains("files") || !manifest.at("files").is_object()) {
    throw Error(ErrorKind::kManifestMismatch, path.string() + " lists no files");
  }
  const Json& files = manifest.at("files");
  for (const auto& [rel, info] : files.items()) {
    const fs::path p = dir / rel;
    if (!fs::exists(p)) throw Error(ErrorKind::kManifestMismatch, rel + " is missing");
    if (sha256_hex(io::read_file(p)) != info.at("sha256").get<std::string>()) {
      throw Error(ErrorKind::kManifestMismatch, rel + " does not match its recorded hash");
    }
  }
  if (manifest.value("dataset_hash", "") != dataset_hash(files)) {
    throw Error(ErrorKind::kManifestMismatch, "dataset_hash does not match the listed files");
  }
  return manifest;
}

BenchmarkDataset load(const fs::path& dir) {
  const Json manifest = verify_manifest(dir);
  BenchmarkDataset d;
  d.config = manifest.at("config");
  d.languages = manifest.at("languages").get<std::vector<LanguageCode>>();
  d.created_at = manifest.at("created_at").get<std::string>();
  d.pipeline_version = manifest.at("pipeline_version").get<std::string>();
  d.pre_split = manifest.at("pre_split").get<std::map<std::string, std::size_t>>();
  for (const auto& [dom, a] : manifest.at("attrition").items()) d.attrition[dom] = attrition_from_json(a);
  if (d.languages.size() < 2) throw Error(ErrorKind::kValidation, "manifest lists fewer than two languages");

  for (const auto& j : io::read_jsonl(dir / kEntities)) d.entities.push_back(entity_from_json(j));
  for (const auto& l : d.languages) {
    auto& docs = d.train_docs[l];
    for (const auto& j : io::read_jsonl(dir / rel_docs(l))) docs.push_back(document_from_json(j));
  }
  for (const auto& j : io::read_jsonl(dir / kValidation)) d.validation.push_back(fact_qa_from_json(j));
  for (std::size_t i = 1; i < d.languages.size(); ++i) {
    for (const auto& j : io::read_jsonl(dir / rel_test(d.languages[i]))) d.test.push_back(fact_qa_from_json(j));
  }
  return d;
}

}  // namespace tbench::assemble

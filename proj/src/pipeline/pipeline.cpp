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


#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <set>

#include "core/error.hpp"
#include "core/io.hpp"
#include "core/log.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "gate/leakage_gate.hpp"
#include "llm/mock.hpp"
#include "providers/documents.hpp"
#include "providers/provider.hpp"
#include "qa/qa_pipeline.hpp"
#include "translate/translator.hpp"

namespace fs = std::filesystem;

namespace tbench::pipeline {
namespace {

std::vector<KnowledgeEntity> read_entities(const fs::path& p) {
  std::vector<KnowledgeEntity> out;
  for (const auto& j : io::read_jsonl(p)) out.push_back(entity_from_json(j));
  return out;
}

std::vector<SourceDocument> read_documents(const fs::path& p) {
  std::vector<SourceDocument> out;
  for (const auto& j : io::read_jsonl(p)) out.push_back(document_from_json(j));
  return out;
}

std::vector<FactQA> read_qas(const fs::path& p) {
  std::vector<FactQA> out;
  for (const auto& j : io::read_jsonl(p)) out.push_back(fact_qa_from_json(j));
  return out;
}

std::map<std::string, SourceDocument> by_entity(const std::vector<SourceDocument>& docs) {
  std::map<std::string, SourceDocument> out;
  for (const auto& d : docs) out.emplace(d.entity_id, d);
  return out;
}

fs::path need(const fs::path& p, const char* stage) {
  if (!fs::exists(p)) {
    throw Error(ErrorKind::kPrecondition, p.string() + " not found; run the " + std::string(stage) + " stage first");
  }
  return p;
}

llm::DecodingParams decoding(const EndpointConfig& e) { return {e.temperature, e.max_tokens}; }

std::shared_ptr<llm::Gateway> make_gateway(const PipelineConfig& config, const EndpointConfig& endpoint,
                                           bool offline, const std::shared_ptr<llm::AuditLog>& audit) {
  std::shared_ptr<llm::LlmBackend> backend;
  if (offline || endpoint.kind == "mock") {
    backend = llm::make_fixture_backend(endpoint.mock_fixture.empty() ? fs::path() : config.resolve(endpoint.mock_fixture));
  } else {
    backend = std::make_shared<llm::HttpBackend>(endpoint);
  }
  return std::make_shared<llm::Gateway>(backend, llm::gateway_options(endpoint), audit);
}

}  // namespace

fs::path work_dir(const RunOptions& options) { return options.out_dir / "work"; }

Models make_models(const PipelineConfig& config, const RunOptions& options) {
  auto audit = std::make_shared<llm::AuditLog>(options.out_dir / "logs" / "llm_audit.jsonl");
  return Models{make_gateway(config, config.generator, options.offline, audit),
                make_gateway(config, config.judge, options.offline, audit),
                make_gateway(config, config.target, options.offline, audit)};
}

std::string resolve_created_at(const PipelineConfig& config) {
  if (!config.created_at.empty()) return config.created_at;
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (*end != '\0' || v < 0) throw Error(ErrorKind::kValidation, "SOURCE_DATE_EPOCH is not a unix timestamp");
    t = static_cast<std::time_t>(v);
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void stage_fetch(const PipelineConfig& config, const RunOptions& options) {
  const fs::path wd = work_dir(options);
  std::vector<KnowledgeEntity> kept;
  std::vector<SourceDocument> docs;
  Json counts = Json::object();
  for (Domain dom : config.domains) {
    const ProviderConfig* pc = providers::provider_for(config, dom);
    if (!pc) throw Error(ErrorKind::kValidation, "providers: none configured for domain " + std::string(domain_name(dom)));
    auto provider = providers::make_provider(config, *pc, options.offline);
    // Fetch from the cutoff so that entities inside the exclusion window are
    // seen and counted, then filter.
    const DateRange range{config.knowledge_cutoff, config.time_range.end};
    const auto fetched = providers::fetch_entities(*provider, range, pc->max_fetch);
    auto valid = providers::temporal_filter(fetched, config.knowledge_cutoff, config.window_months);
    std::erase_if(valid, [&](const KnowledgeEntity& e) { return !config.time_range.contains(e.occurrence_date); });
    std::size_t with_doc = 0;
    for (const auto& e : valid) {
      try {
        docs.push_back(providers::render_entity_document(e, config.pivot()));
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::kDocumentUnavailable && err.kind() != ErrorKind::kTemplateFieldMissing) throw;
        log::warn("fetch: dropping " + e.entity_id + ": " + err.what());
        continue;
      }
      kept.push_back(e);
      ++with_doc;
    }
    counts[std::string(domain_name(dom))] =
        Json{{"fetched", fetched.size()}, {"temporally_valid", valid.size()}, {"with_document", with_doc}};
    log::info("fetch " + std::string(domain_name(dom)) + ": " + std::to_string(fetched.size()) + " fetched, " +
              std::to_string(valid.size()) + " in window");
  }
  io::write_jsonl(wd / "entities.jsonl", io::to_json_records(kept, [](const KnowledgeEntity& e) { return to_json(e); }));
  io::write_jsonl(wd / "documents.jsonl", io::to_json_records(docs, [](const SourceDocument& d) { return to_json(d); }));
  io::write_file(wd / "fetch.json", counts.dump(2) + "\n");
}

void stage_gate(const PipelineConfig&, const RunOptions& options, Models& models) {
  const fs::path wd = work_dir(options);
  const auto entities = read_entities(need(wd / "entities.jsonl", "fetch"));
  const auto docs = by_entity(read_documents(need(wd / "documents.jsonl", "fetch")));
  const auto result = gate::gate(entities, docs, *models.target, *models.judge, options.jobs);
  io::write_jsonl(wd / "gate.jsonl", io::to_json_records(result.decisions, [](const GateDecision& d) { return to_json(d); }));
  io::write_jsonl(wd / "gate_valid.jsonl",
                  io::to_json_records(result.valid, [](const KnowledgeEntity& e) { return to_json(e); }));
  log::info("gate: " + std::to_string(result.valid.size()) + " of " + std::to_string(entities.size()) +
            " entities unknown to the target model");
}

void stage_qa(const PipelineConfig& config, const RunOptions& options, Models& models) {
  const fs::path wd = work_dir(options);
  auto valid = read_entities(need(wd / "gate_valid.jsonl", "gate"));
  const auto docs = by_entity(read_documents(need(wd / "documents.jsonl", "fetch")));

  std::sort(valid.begin(), valid.end(), [](const KnowledgeEntity& a, const KnowledgeEntity& b) {
    return std::tie(a.domain, a.occurrence_date, a.entity_id) < std::tie(b.domain, b.occurrence_date, b.entity_id);
  });
  std::vector<KnowledgeEntity> sampled;
  std::map<Domain, int> taken;
  for (const auto& e : valid) {
    if (taken[e.domain]++ < config.entities_per_domain) sampled.push_back(e);
  }

  struct Generated {
    std::vector<FactQA> qas;
    Json info;
  };
  const auto gen_decoding = decoding(config.generator);
  auto generated = parallel_map(sampled.size(), options.jobs, [&](std::size_t i) {
    const KnowledgeEntity& e = sampled[i];
    Generated g;
    try {
      auto r = qa::generate_qas(*models.generator, docs.at(e.entity_id), config.pivot(), config.questions_per_entity,
                                gen_decoding);
      for (auto& q : r.qas) {
        auto rng = new_run_rng(config.seed, "shuffle/" + q.base_qa_id);
        g.qas.push_back(qa::shuffle_options(q, rng));
      }
      Json dropped = Json::array();
      for (const auto& d : r.dropped) dropped.push_back(Json{{"index", d.index}, {"reason", d.reason}});
      g.info = Json{{"generated", g.qas.size()}, {"dropped", dropped}, {"calls", r.calls}};
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::kGenerationFailed && err.kind() != ErrorKind::kLlmExhausted &&
          err.kind() != ErrorKind::kLlmRefusal) {
        throw;
      }
      log::warn("qa: no questions for " + e.entity_id + ": " + err.what());
      g.info = Json{{"generated", 0}, {"error", err.what()}};
    }
    return g;
  });

  std::vector<FactQA> all;
  Json per_entity = Json::object();
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    per_entity[sampled[i].entity_id] = generated[i].info;
    all.insert(all.end(), generated[i].qas.begin(), generated[i].qas.end());
  }

  const auto verdicts = parallel_map(all.size(), options.jobs, [&](std::size_t i) {
    try {
      return qa::verify_qa(*models.judge, all[i], docs.at(all[i].entity_id), decoding(config.judge));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::kLlmExhausted && err.kind() != ErrorKind::kLlmRefusal) throw;
      qa::VerifierVerdict v;
      v.qa_id = all[i].qa_id;
      v.note = err.what();
      return v;
    }
  });
  const auto verified = qa::filter_verified(all, verdicts);

  std::vector<Json> vr;
  for (const auto& v : verdicts) {
    vr.push_back(Json{{"qa_id", v.qa_id},
                      {"decision", v.decision == qa::VerifierVerdict::Decision::kSupported ? "Supported" : "Unsupported"},
                      {"source_sentence", v.source_sentence},
                      {"note", v.note}});
  }
  auto qa_json = [](const FactQA& q) { return to_json(q); };
  io::write_jsonl(wd / "sampled.jsonl", io::to_json_records(sampled, [](const KnowledgeEntity& e) { return to_json(e); }));
  io::write_jsonl(wd / "generated.jsonl", io::to_json_records(all, qa_json));
  io::write_jsonl(wd / "verdicts.jsonl", vr);
  io::write_jsonl(wd / "verified.jsonl", io::to_json_records(verified, qa_json));
  io::write_file(wd / "qa.json", Json{{"entities", per_entity}}.dump(2) + "\n");
  log::info("qa: " + std::to_string(all.size()) + " generated, " + std::to_string(verified.size()) + " verified");
}

void stage_translate(const PipelineConfig& config, const RunOptions& options, Models& models) {
  const fs::path wd = work_dir(options);
  const auto sampled = read_entities(need(wd / "sampled.jsonl", "qa"));
  const auto docs = by_entity(read_documents(need(wd / "documents.jsonl", "fetch")));
  const auto verified = read_qas(need(wd / "verified.jsonl", "qa"));
  const Json qa_info = Json::parse(io::read_file(need(wd / "qa.json", "qa")));

  std::vector<KnowledgeEntity> entities;
  for (const auto& e : sampled) {
    if (!qa_info.at("entities").at(e.entity_id).contains("error")) entities.push_back(e);
  }
  std::map<std::string, const KnowledgeEntity*> entity_by_id;
  for (const auto& e : entities) entity_by_id[e.entity_id] = &e;
  const auto targets = config.target_languages();

  const auto doc_results = parallel_map(entities.size() * targets.size(), options.jobs, [&](std::size_t i) {
    const auto& e = entities[i / targets.size()];
    return translate::translate_document(*models.generator, e, docs.at(e.entity_id), targets[i % targets.size()]);
  });
  std::vector<const FactQA*> todo;
  for (const auto& q : verified) {
    if (entity_by_id.count(q.entity_id)) todo.push_back(&q);
  }
  const auto qa_results = parallel_map(todo.size() * targets.size(), options.jobs, [&](std::size_t i) {
    const FactQA& q = *todo[i / targets.size()];
    return translate::translate_qa(*models.generator, q, targets[i % targets.size()],
                                   providers::entity_names(*entity_by_id.at(q.entity_id)));
  });

  std::vector<Json> records;
  std::vector<SourceDocument> out_docs;
  std::vector<FactQA> out_qas;
  for (const auto& r : doc_results) {
    for (const auto& a : r.attempts) records.push_back(translate::to_json(a));
    if (r.document) out_docs.push_back(*r.document);
  }
  for (const auto& r : qa_results) {
    for (const auto& a : r.attempts) records.push_back(translate::to_json(a));
    if (r.qa) out_qas.push_back(*r.qa);
  }
  io::write_jsonl(wd / "translations.jsonl", records);
  io::write_jsonl(wd / "translated_docs.jsonl",
                  io::to_json_records(out_docs, [](const SourceDocument& d) { return to_json(d); }));
  io::write_jsonl(wd / "translated_qas.jsonl", io::to_json_records(out_qas, [](const FactQA& q) { return to_json(q); }));
  log::info("translate: " + std::to_string(out_docs.size()) + " documents, " + std::to_string(out_qas.size()) +
            " QAs");
}

std::map<std::string, Attrition> attrition(const PipelineConfig& config, const RunOptions& options) {
  const fs::path wd = work_dir(options);
  std::map<std::string, Attrition> out;
  for (Domain d : config.domains) out[std::string(domain_name(d))];
  std::map<std::string, std::string> domain_of;

  if (fs::exists(wd / "fetch.json")) {
    const Json counts = Json::parse(io::read_file(wd / "fetch.json"));
    for (const auto& [dom, c] : counts.items()) {
      out[dom].fetched = c.at("fetched").get<std::size_t>();
      out[dom].temporally_valid = c.at("temporally_valid").get<std::size_t>();
    }
  }
  if (fs::exists(wd / "entities.jsonl")) {
    for (const auto& e : read_entities(wd / "entities.jsonl")) domain_of[e.entity_id] = domain_name(e.domain);
  }
  if (fs::exists(wd / "gate_valid.jsonl")) {
    for (const auto& e : read_entities(wd / "gate_valid.jsonl")) ++out[std::string(domain_name(e.domain))].gate_valid;
  }
  if (fs::exists(wd / "sampled.jsonl")) {
    for (const auto& e : read_entities(wd / "sampled.jsonl")) ++out[std::string(domain_name(e.domain))].sampled;
  }
  if (fs::exists(wd / "generated.jsonl")) {
    for (const auto& q : read_qas(wd / "generated.jsonl")) ++out[domain_of.at(q.entity_id)].generated;
  }
  if (fs::exists(wd / "verified.jsonl")) {
    const auto verified = read_qas(wd / "verified.jsonl");
    for (const auto& q : verified) ++out[domain_of.at(q.entity_id)].verified;
    if (fs::exists(wd / "translated_qas.jsonl")) {
      std::map<std::string, std::size_t> langs;
      for (const auto& q : read_qas(wd / "translated_qas.jsonl")) ++langs[q.base_qa_id];
      for (const auto& q : verified) {
        if (langs[q.base_qa_id] == config.target_languages().size()) ++out[domain_of.at(q.entity_id)].translated;
      }
    }
  }
  return out;
}

std::string attrition_table(const std::map<std::string, Attrition>& a) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %8s %9s %10s %8s %10s %9s %11s\n", "Domain", "Fetched", "Temporal",
                "Gate-valid", "Sampled", "Generated", "Verified", "Translated");
  out += line;
  for (const auto& [dom, x] : a) {
    std::snprintf(line, sizeof line, "%-8s %8zu %9zu %10zu %8zu %10zu %9zu %11zu\n", dom.c_str(), x.fetched,
                  x.temporally_valid, x.gate_valid, x.sampled, x.generated, x.verified, x.translated);
    out += line;
  }
  return out;
}

assemble::BenchmarkDataset stage_assemble(const PipelineConfig& config, const RunOptions& options) {
  const fs::path wd = work_dir(options);
  const auto sampled = read_entities(need(wd / "sampled.jsonl", "qa"));
  const Json qa_info = Json::parse(io::read_file(need(wd / "qa.json", "qa")));

  assemble::AssemblyInput in;
  for (const auto& e : sampled) {
    const Json& info = qa_info.at("entities").at(e.entity_id);
    if (info.contains("error")) continue;
    in.entities.push_back(e);
    in.generated_per_entity[e.entity_id] = info.at("generated").get<std::size_t>();
  }
  for (const auto& d : read_documents(need(wd / "documents.jsonl", "fetch"))) in.documents[d.language].emplace(d.entity_id, d);
  for (const auto& d : read_documents(need(wd / "translated_docs.jsonl", "translate"))) {
    in.documents[d.language].emplace(d.entity_id, d);
  }
  for (const auto& q : read_qas(need(wd / "verified.jsonl", "qa"))) in.qas[q.language].push_back(q);
  for (const auto& q : read_qas(need(wd / "translated_qas.jsonl", "translate"))) in.qas[q.language].push_back(q);
  in.attrition = attrition(config, options);
  in.created_at = resolve_created_at(config);

  assemble::AssemblyReport report;
  auto dataset = assemble::assemble(in, config, &report);
  const Json manifest = assemble::serialize(dataset, options.out_dir);

  io::write_file(wd / "assembly.json", Json{{"dataset_hash", manifest.at("dataset_hash")},
                                          {"excluded_entities", report.excluded_entities},
                                          {"dropped_base_qa_ids", report.dropped_base_ids}}
                                         .dump(2) + "\n");
  return dataset;
}

assemble::BenchmarkDataset generate(const PipelineConfig& config, const RunOptions& options) {
  auto models = make_models(config, options);
  stage_fetch(config, options);
  stage_gate(config, options, models);
  stage_qa(config, options, models);
  stage_translate(config, options, models);
  return stage_assemble(config, options);
}

}  // namespace tbench::pipeline

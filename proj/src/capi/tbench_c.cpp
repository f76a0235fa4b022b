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


#include "tbench/tbench.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "assemble/dataset.hpp"
#include "core/config.hpp"
#include "core/error.hpp"
#include "core/hash.hpp"
#include "core/io.hpp"
#include "core/log.hpp"
#include "core/rng.hpp"
#include "core/text.hpp"
#include "eval/harness.hpp"
#include "eval/metrics.hpp"
#include "pipeline/pipeline.hpp"
#include "qa/qa_pipeline.hpp"

namespace fs = std::filesystem;
using namespace tbench;

struct tbench_config {
  PipelineConfig config;
};

struct tbench_eval {
  eval::EvalOptions options;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_kind;

tbench_status fail(const Error& e) {
  g_last_error = e.what();
  g_last_kind = std::string(error_kind_name(e.kind()));
  return static_cast<tbench_status>(exit_category(e.kind()));
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <typename F>
tbench_status guarded(F&& fn) {
  g_last_error.clear();
  g_last_kind.clear();
  try {
    fn();
    return TBENCH_OK;
  } catch (const Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    return fail(Error(ErrorKind::kInternal, e.what()));
  } catch (...) {
    return fail(Error(ErrorKind::kInternal, "unknown exception"));
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorKind::kUsage, std::string(what) + " must not be NULL");
}

void put(char** out, const std::string& s) {
  if (!out) return;
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
}

std::vector<std::string> csv_list(const char* s) {
  std::vector<std::string> out;
  if (!s) return out;
  for (const auto& part : text::split(s, ',')) {
    if (auto t = text::trim(part); !t.empty()) out.push_back(t);
  }
  return out;
}

// Applies a change to a copy and keeps it only if the result validates.
template <typename F>
void update_config(tbench_config* c, F&& change) {
  require(c, "config");
  Json raw = config_to_json(c->config);
  change(raw);
  PipelineConfig next = validate_config(raw);
  next.base_dir = c->config.base_dir;
  c->config = std::move(next);
}

pipeline::RunOptions run_options(const tbench_run_options* o) {
  require(o, "options");
  require(o->out_dir, "options->out_dir");
  return pipeline::RunOptions{o->out_dir, o->offline != 0, std::max(1, o->jobs)};
}

Json stats_json(const assemble::BenchmarkDataset& d) {
  const auto rows = assemble::stats(d);
  Json j = Json::array();
  for (const auto& r : rows) {
    j.push_back(Json{{"domain", r.domain},
                     {"entities", r.entities},
                     {"pre_split", r.pre_split},
                     {"validation", r.validation},
                     {"test", r.test}});
  }
  return Json{{"rows", j}, {"table", assemble::stats_table(rows)}, {"csv", assemble::stats_csv(rows)}};
}

Json summary(const PipelineConfig& config, const pipeline::RunOptions& ro,
             const std::optional<assemble::BenchmarkDataset>& dataset) {
  const auto att = pipeline::attrition(config, ro);
  Json a = Json::object();
  for (const auto& [dom, x] : att) a[dom] = to_json(x);
  Json out{{"attrition", a}, {"attrition_table", pipeline::attrition_table(att)}};
  if (dataset) {
    const Json s = stats_json(*dataset);
    out["stats"] = s.at("rows");
    out["stats_table"] = s.at("table");
    out["dataset_hash"] = Json::parse(io::read_file(ro.out_dir / "manifest.json")).at("dataset_hash");
    out["empty"] = dataset->validation.empty();
  }
  return out;
}

}  // namespace

extern "C" {

const char* tbench_version(void) { return TBENCH_VERSION; }
const char* tbench_last_error(void) { return g_last_error.c_str(); }
const char* tbench_last_error_kind(void) { return g_last_kind.c_str(); }
void tbench_string_free(char* s) { std::free(s); }

void tbench_set_log_level(tbench_log_level level) {
  log::set_min_level(static_cast<log::Level>(std::clamp(static_cast<int>(level), 0, 3)));
}

tbench_status tbench_config_load(const char* path, tbench_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tbench_config{load_config(path)};
  });
}

void tbench_config_free(tbench_config* config) { delete config; }

tbench_status tbench_config_set_domains(tbench_config* config, const char* comma_separated) {
  return guarded([&] { update_config(config, [&](Json& raw) { raw["domains"] = csv_list(comma_separated); }); });
}

tbench_status tbench_config_set_languages(tbench_config* config, const char* comma_separated) {
  return guarded([&] { update_config(config, [&](Json& raw) { raw["languages"] = csv_list(comma_separated); }); });
}

tbench_status tbench_config_set_seed(tbench_config* config, uint64_t seed) {
  return guarded([&] { update_config(config, [&](Json& raw) { raw["seed"] = seed; }); });
}

tbench_status tbench_config_to_json(const tbench_config* config, char** out_json) {
  return guarded([&] {
    require(config, "config");
    put(out_json, config_to_json(config->config).dump(2));
  });
}

tbench_status tbench_generate(const tbench_config* config, const tbench_run_options* options, char** summary_json) {
  return guarded([&] {
    require(config, "config");
    const auto ro = run_options(options);
    const auto dataset = pipeline::generate(config->config, ro);
    put(summary_json, summary(config->config, ro, dataset).dump(2));
  });
}

tbench_status tbench_run_stage(const tbench_config* config, const char* stage, const tbench_run_options* options,
                               char** summary_json) {
  return guarded([&] {
    require(config, "config");
    require(stage, "stage");
    const auto ro = run_options(options);
    const std::string s = stage;
    const PipelineConfig& c = config->config;
    std::optional<assemble::BenchmarkDataset> dataset;
    if (s == "fetch") {
      pipeline::stage_fetch(c, ro);
    } else if (s == "assemble") {
      dataset = pipeline::stage_assemble(c, ro);
    } else if (s == "gate" || s == "qa" || s == "translate") {
      auto models = pipeline::make_models(c, ro);
      if (s == "gate") pipeline::stage_gate(c, ro, models);
      if (s == "qa") pipeline::stage_qa(c, ro, models);
      if (s == "translate") pipeline::stage_translate(c, ro, models);
    } else {
      throw Error(ErrorKind::kUsage, "unknown stage '" + s + "'");
    }
    put(summary_json, summary(c, ro, dataset).dump(2));
  });
}

tbench_status tbench_stats(const char* dataset_dir, char** out_json) {
  return guarded([&] {
    require(dataset_dir, "dataset_dir");
    put(out_json, stats_json(assemble::load(dataset_dir)).dump(2));
  });
}

tbench_status tbench_audit(const char* dataset_dir, double fraction, uint64_t seed, const char* domains,
                           const char* out_dir, char** summary_json) {
  return guarded([&] {
    require(dataset_dir, "dataset_dir");
    require(out_dir, "out_dir");
    if (!(fraction > 0.0 && fraction <= 1.0)) {
      throw Error(ErrorKind::kUsage, "fraction must be in (0, 1], got " + eval::format_double(fraction));
    }
    const auto d = assemble::load(dataset_dir);
    std::vector<Domain> wanted;
    for (const auto& name : csv_list(domains)) wanted.push_back(parse_domain(name));
    const auto dom = assemble::entity_domains(d);
    std::vector<FactQA> pool;
    for (const auto& qa : d.validation) {
      if (wanted.empty() || std::find(wanted.begin(), wanted.end(), dom.at(qa.entity_id)) != wanted.end()) {
        pool.push_back(qa);
      }
    }
    std::map<std::string, SourceDocument> docs;
    for (const auto& doc : d.train_docs.at(d.pivot())) docs.emplace(doc.entity_id, doc);
    auto rng = new_run_rng(seed, "audit");
    Json bundle = qa::export_audit_sample(pool, docs, fraction, rng);
    bundle["seed"] = seed;
    io::write_file(fs::path(out_dir) / "audit.json", bundle.dump(2) + "\n");
    io::write_file(fs::path(out_dir) / "audit.csv", qa::audit_csv(bundle));
    put(summary_json, Json{{"population", bundle.at("population")}, {"sample_size", bundle.at("sample_size")}}.dump(2));
  });
}

tbench_status tbench_eval_new(const char* dataset_dir, const char* out_dir, tbench_eval** out) {
  return guarded([&] {
    require(dataset_dir, "dataset_dir");
    require(out_dir, "out_dir");
    require(out, "out");
    auto* e = new tbench_eval{};
    e->options.dataset_dir = dataset_dir;
    e->options.out_dir = out_dir;
    *out = e;
  });
}

void tbench_eval_free(tbench_eval* eval) { delete eval; }

tbench_status tbench_eval_set_predictions(tbench_eval* eval, const char* predictions_dir) {
  return guarded([&] {
    require(eval, "eval");
    require(predictions_dir, "predictions_dir");
    eval->options.predictions_dir = fs::path(predictions_dir);
  });
}

tbench_status tbench_eval_set_trainer(tbench_eval* eval, const char* command) {
  return guarded([&] {
    require(eval, "eval");
    require(command, "command");
    if (text::trim(command).empty()) throw Error(ErrorKind::kUsage, "empty trainer command");
    eval->options.trainer_command = std::string(command);
  });
}

tbench_status tbench_eval_set_models(tbench_eval* eval, const char* comma_separated) {
  return guarded([&] {
    require(eval, "eval");
    eval->options.models = csv_list(comma_separated);
  });
}

tbench_status tbench_eval_set_pairs(tbench_eval* eval, const char* pairs) {
  return guarded([&] {
    require(eval, "eval");
    require(pairs, "pairs");
    eval->options.pairs = eval::parse_pairs(pairs);
  });
}

tbench_status tbench_eval_set_model_sizes(tbench_eval* eval, const char* sizes) {
  return guarded([&] {
    require(eval, "eval");
    require(sizes, "sizes");
    eval->options.model_sizes = eval::parse_model_sizes(sizes);
  });
}

tbench_status tbench_eval_set_jobs(tbench_eval* eval, int jobs) {
  return guarded([&] {
    require(eval, "eval");
    eval->options.jobs = std::max(1, jobs);
  });
}

tbench_status tbench_eval_set_seed(tbench_eval* eval, uint64_t seed) {
  return guarded([&] {
    require(eval, "eval");
    eval->options.seed = seed;
  });
}

tbench_status tbench_eval_run(tbench_eval* eval, char** summary_json) {
  return guarded([&] {
    require(eval, "eval");
    const auto report = eval::run_evaluation(eval->options);
    put(summary_json, eval::report_to_json(report).dump(2));
  });
}

tbench_status tbench_overall_score(uint64_t a, uint64_t b, uint64_t c, uint64_t d, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = eval::overall_score(eval::ContingencyMatrix{"", "", a, b, c, d});
  });
}

tbench_status tbench_transfer_score(uint64_t a, uint64_t b, uint64_t c, uint64_t d, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = eval::transfer_score(eval::ContingencyMatrix{"", "", a, b, c, d});
  });
}

tbench_status tbench_write_run_record(const char* out_dir, const char* command, int argc, const char* const* argv) {
  return guarded([&] {
    require(out_dir, "out_dir");
    require(command, "command");
    const fs::path root(out_dir);
    std::vector<std::string> args;
    for (int i = 0; i < argc; ++i) args.emplace_back(argv && argv[i] ? argv[i] : "");
    std::vector<fs::path> files;
    if (fs::is_directory(root)) {
      for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file()) continue;
        const fs::path rel = fs::relative(e.path(), root);
        if (rel == "run_record.json" || *rel.begin() == "logs" || *rel.begin() == "trainer") continue;
        files.push_back(rel);
      }
    }
    std::sort(files.begin(), files.end());
    Json outputs = Json::object();
    for (const auto& rel : files) outputs[rel.generic_string()] = sha256_hex(io::read_file(root / rel));
    const Json record{{"schema_version", kSchemaVersion},
                      {"command", command},
                      {"args", args},
                      {"version", TBENCH_VERSION},
                      {"outputs", outputs}};
    io::write_file(root / "run_record.json", record.dump(2) + "\n");
  });
}

}  // extern "C"

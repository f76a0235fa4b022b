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


// Command-line front end. Everything goes through the C API.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tbench/tbench.h"

namespace {

using Json = nlohmann::json;

struct Owned {
  char* p = nullptr;
  ~Owned() { tbench_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

int report_failure(tbench_status s, const std::string& stage) {
  std::cerr << "tbench: " << stage << " failed [" << tbench_last_error_kind() << "]: " << tbench_last_error() << "\n";
  return static_cast<int>(s);
}

struct PipelineFlags {
  std::string config;
  bool offline = false;
  std::string domains;
  std::string languages;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string out = "out";
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--config", f.config, "Pipeline configuration file")->required();
  cmd->add_flag("--offline", f.offline, "No network: mock models and cached provider pages");
  cmd->add_option("--domains", f.domains, "Comma-separated subset of movie,music,sports");
  cmd->add_option("--languages", f.languages, "Comma-separated ISO-639-1 codes, pivot first");
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Dataset directory");
}

class Config {
 public:
  ~Config() { tbench_config_free(c_); }
  tbench_status load(const PipelineFlags& f) {
    tbench_status s = tbench_config_load(f.config.c_str(), &c_);
    if (s == TBENCH_OK && !f.domains.empty()) s = tbench_config_set_domains(c_, f.domains.c_str());
    if (s == TBENCH_OK && !f.languages.empty()) s = tbench_config_set_languages(c_, f.languages.c_str());
    if (s == TBENCH_OK && f.seed) s = tbench_config_set_seed(c_, *f.seed);
    return s;
  }
  const tbench_config* get() const { return c_; }

 private:
  tbench_config* c_ = nullptr;
};

int record(const std::string& out_dir, const std::string& command, const std::vector<const char*>& argv) {
  const tbench_status s =
      tbench_write_run_record(out_dir.c_str(), command.c_str(), static_cast<int>(argv.size()), argv.data());
  return s == TBENCH_OK ? 0 : report_failure(s, "run record");
}

int run_pipeline(const PipelineFlags& f, const std::string& stage, const std::vector<const char*>& argv) {
  Config config;
  if (auto s = config.load(f); s != TBENCH_OK) return report_failure(s, "config");
  const tbench_run_options opts{f.out.c_str(), f.offline ? 1 : 0, f.jobs};
  Owned summary;
  const tbench_status s = stage == "generate" ? tbench_generate(config.get(), &opts, &summary.p)
                                              : tbench_run_stage(config.get(), stage.c_str(), &opts, &summary.p);
  if (s != TBENCH_OK) return report_failure(s, stage);
  const Json j = Json::parse(summary.str());
  std::cout << "Attrition\n" << j.at("attrition_table").get<std::string>();
  if (j.contains("stats_table")) {
    std::cout << "\nDataset " << f.out << " (hash " << j.at("dataset_hash").get<std::string>() << ")\n"
              << j.at("stats_table").get<std::string>();
  }
  if (int rc = record(f.out, stage, argv)) return rc;
  if (j.value("empty", false)) {
    std::cerr << "tbench: " << stage << ": dataset is empty\n";
    return TBENCH_ERR_DATA;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contamination-free cross-lingual knowledge transfer benchmarks"};
  app.set_version_flag("--version", std::string(tbench_version()));
  app.require_subcommand(1);
  app.fallthrough();
  bool verbose = false, quiet = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Warnings and errors only");

  PipelineFlags pf;
  std::vector<std::pair<std::string, CLI::App*>> pipeline_cmds;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"generate", "Run every stage and write the dataset"},
           {"fetch", "Fetch entities, apply the temporal filter, render documents"},
           {"gate", "Drop entities the target model already knows"},
           {"qa", "Generate, shuffle and verify questions"},
           {"translate", "Translate verified questions and documents"},
           {"assemble", "Assemble and serialize the dataset"}}) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_pipeline_flags(cmd, pf);
    pipeline_cmds.emplace_back(name, cmd);
  }

  std::string dataset, predictions, trainer, models, pairs, sizes, eval_out;
  int eval_jobs = 1;
  std::uint64_t eval_seed = 0;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions and write the report files");
  evaluate->add_option("--dataset", dataset, "Dataset directory")->required();
  auto* pred_opt = evaluate->add_option("--predictions", predictions, "Directory of prediction .jsonl files");
  evaluate->add_option("--trainer", trainer, "Trainer command, run as '<cmd> train|select|predict --job FILE'")
      ->excludes(pred_opt);
  evaluate->add_option("--models", models, "Comma-separated model ids");
  evaluate->add_option("--pairs", pairs, "Restrict to train:test pairs, e.g. en:ja,ja:en");
  evaluate->add_option("--model-sizes", sizes, "model=billions,... for the size series");
  evaluate->add_option("--out", eval_out, "Report directory (default <dataset>/report)");
  evaluate->add_option("--jobs", eval_jobs, "Concurrent trainer jobs")->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", eval_seed, "Seed passed to trainer jobs");

  double fraction = 0.2;
  std::uint64_t audit_seed = 0;
  std::string audit_domains, audit_out;
  CLI::App* audit = app.add_subcommand("audit", "Export a random sample for human review");
  audit->add_option("--dataset", dataset, "Dataset directory")->required();
  audit->add_option("--fraction", fraction, "Share of QAs to sample, in (0, 1]");
  audit->add_option("--seed", audit_seed, "Sampling seed");
  audit->add_option("--domains", audit_domains, "Comma-separated domains to sample from");
  audit->add_option("--out", audit_out, "Output directory (default <dataset>/audit)");

  bool csv = false;
  CLI::App* stats = app.add_subcommand("stats", "Per-domain dataset counts");
  stats->add_option("--dataset", dataset, "Dataset directory")->required();
  stats->add_flag("--csv", csv, "CSV instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : TBENCH_ERR_CONFIG;
  }
  tbench_set_log_level(verbose ? TBENCH_LOG_DEBUG : quiet ? TBENCH_LOG_WARN : TBENCH_LOG_INFO);
  const std::vector<const char*> args(argv + 1, argv + argc);

  for (const auto& [name, cmd] : pipeline_cmds) {
    if (cmd->parsed()) return run_pipeline(pf, name, args);
  }

  if (evaluate->parsed()) {
    if (predictions.empty() && trainer.empty()) {
      std::cerr << "tbench: evaluate needs --predictions or --trainer\n";
      return TBENCH_ERR_CONFIG;
    }
    if (eval_out.empty()) eval_out = dataset + "/report";
    tbench_eval* ev = nullptr;
    tbench_status s = tbench_eval_new(dataset.c_str(), eval_out.c_str(), &ev);
    if (s == TBENCH_OK && !predictions.empty()) s = tbench_eval_set_predictions(ev, predictions.c_str());
    if (s == TBENCH_OK && !trainer.empty()) s = tbench_eval_set_trainer(ev, trainer.c_str());
    if (s == TBENCH_OK && !models.empty()) s = tbench_eval_set_models(ev, models.c_str());
    if (s == TBENCH_OK && !pairs.empty()) s = tbench_eval_set_pairs(ev, pairs.c_str());
    if (s == TBENCH_OK && !sizes.empty()) s = tbench_eval_set_model_sizes(ev, sizes.c_str());
    if (s == TBENCH_OK) s = tbench_eval_set_jobs(ev, eval_jobs);
    if (s == TBENCH_OK) s = tbench_eval_set_seed(ev, eval_seed);
    Owned report;
    if (s == TBENCH_OK) s = tbench_eval_run(ev, &report.p);
    tbench_eval_free(ev);
    if (s != TBENCH_OK) return report_failure(s, "evaluate");
    const Json j = Json::parse(report.str());
    for (const auto& w : j.at("warnings")) std::cerr << "warning: " << w.get<std::string>() << "\n";
    std::cout << "Wrote " << eval_out << "/report.json and table1.csv (" << j.at("results").size()
              << " language-pair matrices)\n";
    return record(eval_out, "evaluate", args);
  }

  if (audit->parsed()) {
    if (audit_out.empty()) audit_out = dataset + "/audit";
    Owned summary;
    const tbench_status s = tbench_audit(dataset.c_str(), fraction, audit_seed, audit_domains.c_str(),
                                         audit_out.c_str(), &summary.p);
    if (s != TBENCH_OK) return report_failure(s, "audit");
    const Json j = Json::parse(summary.str());
    std::cout << "Sampled " << j.at("sample_size") << " of " << j.at("population") << " QAs into " << audit_out
              << "/audit.json\n";
    return record(audit_out, "audit", args);
  }

  if (stats->parsed()) {
    Owned out;
    const tbench_status s = tbench_stats(dataset.c_str(), &out.p);
    if (s != TBENCH_OK) return report_failure(s, "stats");
    const Json j = Json::parse(out.str());
    std::cout << j.at(csv ? "csv" : "table").get<std::string>();
    return 0;
  }
  return TBENCH_ERR_INTERNAL;
}

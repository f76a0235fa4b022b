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

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "assemble/dataset.hpp"
#include "core/config.hpp"
#include "llm/gateway.hpp"

namespace tbench::pipeline {

struct RunOptions {
  std::filesystem::path out_dir;  // dataset root; stage files go to out_dir/work
  bool offline = false;
  int jobs = 1;
};

// Model endpoints for one run. Offline runs and "mock" endpoints use the
// simulated model with the endpoint's fixture.
struct Models {
  std::shared_ptr<llm::Gateway> generator;
  std::shared_ptr<llm::Gateway> judge;
  std::shared_ptr<llm::Gateway> target;
};
Models make_models(const PipelineConfig& config, const RunOptions& options);

std::filesystem::path work_dir(const RunOptions& options);

// Each stage reads its inputs from and writes its outputs to the work
// directory, so any stage can be rerun on its own.
//   fetch:     entities.jsonl, documents.jsonl, fetch.json
//   gate:      gate.jsonl (one decision per entity), gate_valid.jsonl
//   qa:        sampled.jsonl, generated.jsonl, verdicts.jsonl, verified.jsonl, qa.json
//   translate: translations.jsonl, translated_docs.jsonl, translated_qas.jsonl
//   assemble:  the dataset in out_dir plus assembly.json (exclusions)
void stage_fetch(const PipelineConfig& config, const RunOptions& options);
void stage_gate(const PipelineConfig& config, const RunOptions& options, Models& models);
void stage_qa(const PipelineConfig& config, const RunOptions& options, Models& models);
void stage_translate(const PipelineConfig& config, const RunOptions& options, Models& models);
assemble::BenchmarkDataset stage_assemble(const PipelineConfig& config, const RunOptions& options);

// Per-domain stage counts recomputed from the work directory.
std::map<std::string, Attrition> attrition(const PipelineConfig& config, const RunOptions& options);
std::string attrition_table(const std::map<std::string, Attrition>& a);

// Runs every stage in order. An empty dataset is not an error here.
assemble::BenchmarkDataset generate(const PipelineConfig& config, const RunOptions& options);

// created_at for a run: config value, else SOURCE_DATE_EPOCH, else now (UTC).
std::string resolve_created_at(const PipelineConfig& config);

}  // namespace tbench::pipeline

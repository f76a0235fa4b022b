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
#include <map>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/types.hpp"

namespace tbench::assemble {

struct BenchmarkDataset {
  Json config;                          // snapshot of the generating configuration
  std::vector<LanguageCode> languages;  // first entry is the pivot
  std::vector<KnowledgeEntity> entities;
  std::map<LanguageCode, std::vector<SourceDocument>> train_docs;
  std::vector<FactQA> validation;  // pivot language
  std::vector<FactQA> test;        // every non-pivot language
  std::map<std::string, std::size_t> pre_split;  // domain -> QAs generated before verification
  std::map<std::string, Attrition> attrition;    // domain -> stage counts
  std::string created_at;
  std::string pipeline_version;

  const LanguageCode& pivot() const { return languages.front(); }
  bool operator==(const BenchmarkDataset&) const = default;
};

struct AssemblyInput {
  std::vector<KnowledgeEntity> entities;
  std::map<LanguageCode, std::map<std::string, SourceDocument>> documents;  // language -> entity_id -> doc
  std::map<LanguageCode, std::vector<FactQA>> qas;                          // language -> verified QAs
  std::map<std::string, std::size_t> generated_per_entity;
  std::map<std::string, Attrition> attrition;
  std::string created_at;
};

struct AssemblyReport {
  std::vector<std::string> excluded_entities;  // missing a document in some language
  std::vector<std::string> dropped_base_ids;   // missing a translation in some language
};

// Entities lacking a document in any configured language are excluded
// everywhere; a QA missing from any language is removed from all of them.
// Every text field is NFC-normalized.
BenchmarkDataset assemble(const AssemblyInput& input, const PipelineConfig& config, AssemblyReport* report = nullptr);

struct StatsRow {
  std::string domain;  // "Total" for the last row
  std::size_t entities = 0;
  std::size_t pre_split = 0;
  std::size_t validation = 0;
  std::size_t test = 0;

  bool operator==(const StatsRow&) const = default;
};

// One row per configured domain in canonical order, then a Total row.
std::vector<StatsRow> stats(const BenchmarkDataset& dataset);
std::string stats_csv(const std::vector<StatsRow>& rows);
std::string stats_table(const std::vector<StatsRow>& rows);

// Writes train/<lang>/docs.jsonl, validation/qas.jsonl, test/<lang>/qas.jsonl,
// entities.jsonl and finally manifest.json. Returns the manifest.
Json serialize(const BenchmarkDataset& dataset, const std::filesystem::path& out_dir);

// Recomputes every file hash listed in the manifest. Throws
// Error(kManifestMismatch) naming the first differing file.
Json verify_manifest(const std::filesystem::path& dir);

BenchmarkDataset load(const std::filesystem::path& dir);

// Domain of each entity id, from entities.jsonl semantics.
std::map<std::string, Domain> entity_domains(const BenchmarkDataset& dataset);

}  // namespace tbench::assemble

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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "assemble/dataset.hpp"
#include "eval/metrics.hpp"

namespace tbench::eval {

// Wire format between the trainer adapter and the harness, one JSON object
// per line: {base_qa_id, language, train_language, model_id, raw_output,
// checkpoint, temperature}. predicted_option is filled by grading.
struct PredictionRecord {
  std::string base_qa_id;
  LanguageCode language;
  LanguageCode train_language;
  std::string model_id;
  std::string raw_output;
  std::string checkpoint;
  double temperature = 0.0;
  std::optional<OptionLetter> predicted_option;

  bool operator==(const PredictionRecord&) const = default;
};

// Throws Error(kMalformedRecord) naming the offending field.
PredictionRecord prediction_from_json(const Json& j);
Json to_json(const PredictionRecord& p);
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);
// Every *.jsonl below dir, visited in path order.
std::vector<PredictionRecord> read_prediction_dir(const std::filesystem::path& dir);

using LanguagePair = std::pair<LanguageCode, LanguageCode>;  // (train, test)
// "en:ja,ja:en" -> pairs. Throws Error(kUsage) on bad syntax.
std::vector<LanguagePair> parse_pairs(const std::string& spec);
std::vector<LanguagePair> all_pairs(const std::vector<LanguageCode>& languages);

struct PairResult {
  std::string model_id;
  std::string domain;
  ContingencyMatrix matrix;
  Coverage coverage;
  double overall = 0.0;
  std::optional<double> transfer;
};

struct DomainSummary {
  std::string model_id;
  std::string domain;
  Aggregate overall;
  std::optional<Aggregate> transfer;  // empty when every pair is undefined
  std::size_t n_pairs = 0;
};

struct TransferReport {
  std::string dataset_hash;
  std::vector<LanguageCode> languages;
  std::vector<std::string> models;
  std::vector<std::string> domains;
  std::vector<LanguagePair> pairs;
  std::vector<PairResult> results;
  std::vector<DomainSummary> summaries;
  std::vector<std::string> warnings;  // coverage gaps and ignored records
};

// Grades predictions against the dataset and builds one matrix per model,
// domain and requested pair. Every (model, train, test) cell needed by a pair
// must have predictions, else Error(kMissingPredictions) listing the cells.
TransferReport build_report(const assemble::BenchmarkDataset& dataset, const std::string& dataset_hash,
                            const std::vector<PredictionRecord>& predictions, std::vector<std::string> models,
                            const std::vector<LanguagePair>& pairs);

Json report_to_json(const TransferReport& report);
// model, domain, overall_mean, overall_std, transfer_mean, transfer_std,
// n_pairs, n_transfer_pairs, n_undefined, overall, transfer.
std::string table1_csv(const TransferReport& report);
// |L| x |L| transfer grid, rows = train language; NA off the defined cells.
std::string heatmap_csv(const TransferReport& report, const std::string& model, const std::string& domain);
Json heatmap_json(const TransferReport& report, const std::string& model, const std::string& domain);

struct SizePoint {
  std::string model_id;
  double params_b = 0.0;
  Aggregate overall;
  std::optional<Aggregate> transfer;
};
// domain -> points sorted by size then model id. Models without size metadata
// are left out.
std::map<std::string, std::vector<SizePoint>> size_ablation(const TransferReport& report,
                                                            const std::map<std::string, double>& sizes);
std::string sizes_csv(const std::vector<SizePoint>& series);

// model=size pairs, e.g. "m7=7,m9=9". Throws Error(kUsage).
std::map<std::string, double> parse_model_sizes(const std::string& spec);

struct EvalOptions {
  std::filesystem::path dataset_dir;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> predictions_dir;
  std::optional<std::string> trainer_command;  // program and leading args, split on spaces
  std::vector<std::string> models;             // required with a trainer
  std::vector<LanguagePair> pairs;             // empty = all ordered pairs
  std::map<std::string, double> model_sizes;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Verifies the manifest, obtains predictions (files or trainer), grades and
// writes report.json, table1.csv, heatmap_<model>_<domain>.{csv,json} and,
// with size metadata, sizes_<domain>.csv.
TransferReport run_evaluation(const EvalOptions& options);

}  // namespace tbench::eval

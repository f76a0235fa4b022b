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


#include "eval/harness.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/io.hpp"
#include "core/log.hpp"
#include "core/parallel.hpp"
#include "core/text.hpp"
#include "eval/trainer_client.hpp"

namespace fs = std::filesystem;

namespace tbench::eval {
namespace {

std::string required_string(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw Error(ErrorKind::kMalformedRecord, std::string("prediction field '") + key + "' missing or not a string");
  }
  return j.at(key).get<std::string>();
}

struct Cell {
  std::string model;
  LanguageCode train;
  LanguageCode test;
  bool operator<(const Cell& o) const { return std::tie(model, train, test) < std::tie(o.model, o.train, o.test); }
};

std::string cell_name(const Cell& c) { return c.model + "/train=" + c.train + "/test=" + c.test; }

std::string pm(const Aggregate& a) { return format_double(a.mean) + "±" + format_double(a.std); }

const PairResult* find_result(const TransferReport& r, const std::string& model, const std::string& domain,
                              const LanguageCode& train, const LanguageCode& test) {
  for (const auto& p : r.results) {
    if (p.model_id == model && p.domain == domain && p.matrix.train_language == train &&
        p.matrix.test_language == test) {
      return &p;
    }
  }
  return nullptr;
}

Json aggregate_json(const Aggregate& a) {
  return Json{{"mean", a.mean}, {"std", a.std}, {"n", a.n}, {"excluded", a.excluded}};
}

}  // namespace

PredictionRecord prediction_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kMalformedRecord, "prediction record is not an object");
  PredictionRecord p;
  p.base_qa_id = required_string(j, "base_qa_id");
  p.language = required_string(j, "language");
  p.train_language = required_string(j, "train_language");
  p.model_id = required_string(j, "model_id");
  p.raw_output = required_string(j, "raw_output");
  if (!j.contains("checkpoint") || !(j.at("checkpoint").is_string() || j.at("checkpoint").is_number_integer())) {
    throw Error(ErrorKind::kMalformedRecord, "prediction field 'checkpoint' missing");
  }
  p.checkpoint = j.at("checkpoint").is_string() ? j.at("checkpoint").get<std::string>()
                                                : std::to_string(j.at("checkpoint").get<long long>());
  if (!j.contains("temperature") || !j.at("temperature").is_number()) {
    throw Error(ErrorKind::kMalformedRecord, "prediction field 'temperature' missing or not a number");
  }
  p.temperature = j.at("temperature").get<double>();
  if (p.base_qa_id.empty() || p.model_id.empty()) {
    throw Error(ErrorKind::kMalformedRecord, "prediction with empty base_qa_id or model_id");
  }
  if (j.contains("predicted_option") && j.at("predicted_option").is_string()) {
    p.predicted_option = parse_letter(j.at("predicted_option").get<std::string>());
  }
  return p;
}

Json to_json(const PredictionRecord& p) {
  Json j{{"base_qa_id", p.base_qa_id},       {"language", p.language},     {"train_language", p.train_language},
         {"model_id", p.model_id},           {"raw_output", p.raw_output}, {"checkpoint", p.checkpoint},
         {"temperature", p.temperature}};
  if (p.predicted_option) j["predicted_option"] = std::string(1, letter_char(*p.predicted_option));
  return j;
}

std::vector<PredictionRecord> read_predictions(const fs::path& path) {
  std::vector<PredictionRecord> out;
  std::size_t line = 0;
  for (const auto& j : io::read_jsonl(path)) {
    ++line;
    try {
      out.push_back(prediction_from_json(j));
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + " record " + std::to_string(line) + ": " + e.detail());
    }
  }
  return out;
}

std::vector<PredictionRecord> read_prediction_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::kIo, "prediction directory " + dir.string() + " not found");
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<PredictionRecord> out;
  for (const auto& f : files) {
    auto part = read_predictions(f);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<LanguagePair> parse_pairs(const std::string& spec) {
  std::vector<LanguagePair> out;
  for (const auto& item : text::split(spec, ',')) {
    const auto parts = text::split(text::trim(item), ':');
    if (parts.size() != 2 || text::trim(parts[0]).empty() || text::trim(parts[1]).empty()) {
      throw Error(ErrorKind::kUsage, "bad language pair '" + item + "', expected train:test");
    }
    LanguagePair p{text::trim(parts[0]), text::trim(parts[1])};
    if (p.first == p.second) throw Error(ErrorKind::kUsage, "language pair '" + item + "' repeats a language");
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  if (out.empty()) throw Error(ErrorKind::kUsage, "empty --pairs list");
  return out;
}

std::vector<LanguagePair> all_pairs(const std::vector<LanguageCode>& languages) {
  std::vector<LanguagePair> out;
  for (const auto& a : languages) {
    for (const auto& b : languages) {
      if (a != b) out.emplace_back(a, b);
    }
  }
  return out;
}

TransferReport build_report(const assemble::BenchmarkDataset& dataset, const std::string& dataset_hash,
                            const std::vector<PredictionRecord>& predictions, std::vector<std::string> models,
                            const std::vector<LanguagePair>& requested) {
  TransferReport r;
  r.dataset_hash = dataset_hash;
  r.languages = dataset.languages;
  r.pairs = requested.empty() ? all_pairs(dataset.languages) : requested;
  for (const auto& [a, b] : r.pairs) {
    for (const auto& l : {a, b}) {
      if (std::find(r.languages.begin(), r.languages.end(), l) == r.languages.end()) {
        throw Error(ErrorKind::kUsage, "language '" + l + "' is not in the dataset");
      }
    }
  }
  if (models.empty()) {
    std::set<std::string> seen;
    for (const auto& p : predictions) seen.insert(p.model_id);
    models.assign(seen.begin(), seen.end());
  }
  if (models.empty()) throw Error(ErrorKind::kMissingPredictions, "no prediction records at all");
  r.models = models;

  std::map<std::pair<std::string, LanguageCode>, const FactQA*> qas;
  for (const auto& qa : dataset.validation) qas[{qa.base_qa_id, qa.language}] = &qa;
  for (const auto& qa : dataset.test) qas[{qa.base_qa_id, qa.language}] = &qa;
  const auto domains = assemble::entity_domains(dataset);
  for (const auto& row : assemble::stats(dataset)) {
    if (row.domain != "Total" && row.validation > 0) r.domains.push_back(row.domain);
  }

  const std::set<std::string> model_set(models.begin(), models.end());
  std::map<Cell, std::map<std::string, PredictionRecord>> cells;
  std::size_t unknown = 0, other_models = 0;
  for (const auto& p : predictions) {
    if (!model_set.count(p.model_id)) {
      ++other_models;
      continue;
    }
    if (!qas.count({p.base_qa_id, p.language})) {
      ++unknown;
      continue;
    }
    auto& slot = cells[{p.model_id, p.train_language, p.language}];
    const auto [it, inserted] = slot.emplace(p.base_qa_id, p);
    if (!inserted && !(it->second == p)) {
      throw Error(ErrorKind::kMalformedRecord, "conflicting predictions for " + p.base_qa_id + " in " +
                                                   cell_name({p.model_id, p.train_language, p.language}));
    }
  }
  if (unknown) r.warnings.push_back(std::to_string(unknown) + " prediction(s) reference unknown qa ids; excluded");
  if (other_models) r.warnings.push_back(std::to_string(other_models) + " prediction(s) for unselected models ignored");

  std::set<Cell> needed;
  for (const auto& m : models) {
    for (const auto& [train, test] : r.pairs) {
      needed.insert({m, train, train});
      needed.insert({m, train, test});
    }
  }
  std::vector<std::string> missing;
  for (const auto& c : needed) {
    if (!cells.count(c)) missing.push_back(cell_name(c));
  }
  if (!missing.empty()) throw Error(ErrorKind::kMissingPredictions, text::join(missing, ", "));

  auto graded = [&](const Cell& c, const std::string& domain) {
    GradedSet out;
    for (const auto& [base, p] : cells.at(c)) {
      const FactQA& qa = *qas.at({base, c.test});
      if (domain_name(domains.at(qa.entity_id)) != domain) continue;
      out[base] = grade_answer(p.raw_output, qa).correct;
    }
    return out;
  };

  for (const auto& m : models) {
    for (const auto& dom : r.domains) {
      DomainSummary s{m, dom, {}, std::nullopt, 0};
      std::vector<std::optional<double>> overall, transfer;
      for (const auto& [train, test] : r.pairs) {
        PairResult pr{m, dom, {}, {}, 0.0, std::nullopt};
        try {
          pr.matrix = build_contingency(train, graded({m, train, train}, dom), test, graded({m, train, test}, dom),
                                        &pr.coverage);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kEmptyJoin) throw;
          r.warnings.push_back(m + " " + dom + ": " + e.what() + "; pair skipped");
          continue;
        }
        if (pr.coverage.train_only || pr.coverage.test_only) {
          r.warnings.push_back(m + " " + dom + " " + train + "->" + test + ": " +
                               std::to_string(pr.coverage.train_only + pr.coverage.test_only) +
                               " item(s) graded on one side only; excluded");
        }
        pr.overall = overall_score(pr.matrix);
        pr.transfer = try_transfer_score(pr.matrix);
        overall.push_back(pr.overall);
        transfer.push_back(pr.transfer);
        r.results.push_back(pr);
      }
      if (overall.empty()) continue;
      s.n_pairs = overall.size();
      s.overall = aggregate(overall);
      try {
        s.transfer = aggregate(transfer);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNothingToAggregate) throw;
      }
      r.summaries.push_back(s);
    }
  }
  return r;
}

Json report_to_json(const TransferReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.results) {
    pairs.push_back(Json{{"model_id", p.model_id},
                         {"domain", p.domain},
                         {"train_language", p.matrix.train_language},
                         {"test_language", p.matrix.test_language},
                         {"A", p.matrix.a},
                         {"B", p.matrix.b},
                         {"C", p.matrix.c},
                         {"D", p.matrix.d},
                         {"overall", p.overall},
                         {"transfer", p.transfer ? Json(*p.transfer) : Json(nullptr)},
                         {"coverage",
                          {{"joined", p.coverage.joined},
                           {"train_only", p.coverage.train_only},
                           {"test_only", p.coverage.test_only}}}});
  }
  Json summaries = Json::array();
  std::map<std::string, std::vector<std::optional<double>>> model_overall, model_transfer;
  for (const auto& s : r.summaries) {
    summaries.push_back(Json{{"model_id", s.model_id},
                             {"domain", s.domain},
                             {"n_pairs", s.n_pairs},
                             {"overall", aggregate_json(s.overall)},
                             {"transfer", s.transfer ? aggregate_json(*s.transfer) : Json(nullptr)}});
    model_overall[s.model_id].push_back(s.overall.mean);
    model_transfer[s.model_id].push_back(s.transfer ? std::optional<double>(s.transfer->mean) : std::nullopt);
  }
  Json averages = Json::object();
  for (const auto& [m, o] : model_overall) {
    Json t = nullptr;
    try {
      t = aggregate(model_transfer[m]).mean;
    } catch (const Error&) {
    }
    averages[m] = Json{{"overall", aggregate(o).mean}, {"transfer", t}};
  }
  Json pair_list = Json::array();
  for (const auto& [a, b] : r.pairs) pair_list.push_back(Json::array({a, b}));
  return Json{{"schema_version", kSchemaVersion},
              {"dataset_hash", r.dataset_hash},
              {"languages", r.languages},
              {"models", r.models},
              {"domains", r.domains},
              {"pairs", pair_list},
              {"std_convention", "population"},
              {"transfer_undefined_policy", "excluded from aggregation"},
              {"grading", "first standalone capital A-D in the raw output; none parsed counts as wrong"},
              {"results", pairs},
              {"summaries", summaries},
              {"model_averages", averages},
              {"warnings", r.warnings}};
}

std::string table1_csv(const TransferReport& r) {
  std::ostringstream out;
  out << "model,domain,overall_mean,overall_std,transfer_mean,transfer_std,n_pairs,n_transfer_pairs,n_undefined,"
         "overall,transfer\n";
  for (const auto& s : r.summaries) {
    out << s.model_id << ',' << s.domain << ',' << format_double(s.overall.mean) << ','
        << format_double(s.overall.std) << ',';
    if (s.transfer) {
      out << format_double(s.transfer->mean) << ',' << format_double(s.transfer->std) << ',' << s.n_pairs << ','
          << s.transfer->n << ',' << s.transfer->excluded << ',' << pm(s.overall) << ',' << pm(*s.transfer) << '\n';
    } else {
      out << "NA,NA," << s.n_pairs << ",0," << s.n_pairs << ',' << pm(s.overall) << ",NA\n";
    }
  }
  return out.str();
}

std::string heatmap_csv(const TransferReport& r, const std::string& model, const std::string& domain) {
  std::ostringstream out;
  out << "train\\test";
  for (const auto& l : r.languages) out << ',' << l;
  out << '\n';
  for (const auto& train : r.languages) {
    out << train;
    for (const auto& test : r.languages) {
      const PairResult* p = train == test ? nullptr : find_result(r, model, domain, train, test);
      out << ',' << (p && p->transfer ? format_double(*p->transfer) : "NA");
    }
    out << '\n';
  }
  return out.str();
}

Json heatmap_json(const TransferReport& r, const std::string& model, const std::string& domain) {
  Json cells = Json::array();
  for (const auto& train : r.languages) {
    Json row = Json::array();
    for (const auto& test : r.languages) {
      const PairResult* p = train == test ? nullptr : find_result(r, model, domain, train, test);
      row.push_back(p && p->transfer ? Json(*p->transfer) : Json("NA"));
    }
    cells.push_back(row);
  }
  return Json{{"model_id", model},
              {"domain", domain},
              {"metric", "transfer"},
              {"rows", "train_language"},
              {"columns", "test_language"},
              {"languages", r.languages},
              {"cells", cells}};
}

std::map<std::string, std::vector<SizePoint>> size_ablation(const TransferReport& r,
                                                            const std::map<std::string, double>& sizes) {
  std::map<std::string, std::vector<SizePoint>> out;
  for (const auto& s : r.summaries) {
    const auto it = sizes.find(s.model_id);
    if (it == sizes.end()) continue;
    out[s.domain].push_back(SizePoint{s.model_id, it->second, s.overall, s.transfer});
  }
  for (auto& [dom, series] : out) {
    std::sort(series.begin(), series.end(), [](const SizePoint& a, const SizePoint& b) {
      return std::tie(a.params_b, a.model_id) < std::tie(b.params_b, b.model_id);
    });
  }
  return out;
}

std::string sizes_csv(const std::vector<SizePoint>& series) {
  std::ostringstream out;
  out << "model,params_b,overall_mean,overall_std,transfer_mean,transfer_std\n";
  for (const auto& p : series) {
    out << p.model_id << ',' << format_double(p.params_b) << ',' << format_double(p.overall.mean) << ','
        << format_double(p.overall.std) << ',';
    if (p.transfer) {
      out << format_double(p.transfer->mean) << ',' << format_double(p.transfer->std) << '\n';
    } else {
      out << "NA,NA\n";
    }
  }
  return out.str();
}

std::map<std::string, double> parse_model_sizes(const std::string& spec) {
  std::map<std::string, double> out;
  for (const auto& item : text::split(spec, ',')) {
    const auto eq = item.find('=');
    const std::string model = text::trim(item.substr(0, eq));
    if (eq == std::string::npos || model.empty()) {
      throw Error(ErrorKind::kUsage, "bad model size '" + item + "', expected model=billions");
    }
    try {
      std::size_t used = 0;
      const std::string value = text::trim(item.substr(eq + 1));
      const double v = std::stod(value, &used);
      if (used != value.size() || !(v > 0)) throw std::invalid_argument(value);
      out[model] = v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::kUsage, "bad model size '" + item + "'");
    }
  }
  return out;
}

TransferReport run_evaluation(const EvalOptions& o) {
  const Json manifest = assemble::verify_manifest(o.dataset_dir);
  const auto dataset = assemble::load(o.dataset_dir);
  const auto pairs = o.pairs.empty() ? all_pairs(dataset.languages) : o.pairs;

  std::vector<PredictionRecord> predictions;
  if (o.predictions_dir) {
    predictions = read_prediction_dir(*o.predictions_dir);
  } else if (o.trainer_command) {
    if (o.models.empty()) throw Error(ErrorKind::kUsage, "--models is required with --trainer");
    std::vector<std::string> command;
    for (const auto& part : text::split(*o.trainer_command, ' ')) {
      if (!part.empty()) command.push_back(part);
    }
    TrainerClient client(command, o.out_dir / "trainer", o.seed);
    auto qa_file = [&](const LanguageCode& l) {
      return l == dataset.pivot() ? o.dataset_dir / "validation/qas.jsonl"
                                  : o.dataset_dir / "test" / l / "qas.jsonl";
    };
    std::vector<std::pair<std::string, LanguageCode>> jobs;
    for (const auto& m : o.models) {
      std::set<LanguageCode> trains;
      for (const auto& p : pairs) trains.insert(p.first);
      for (const auto& t : trains) jobs.emplace_back(m, t);
    }
    auto per_job = parallel_map(jobs.size(), o.jobs, [&](std::size_t i) {
      const auto& [m, train] = jobs[i];
      const auto checkpoints = client.train(m, train, o.dataset_dir / "train" / train / "docs.jsonl");
      const auto best = client.select(m, train, checkpoints, o.dataset_dir / "validation/qas.jsonl");
      std::set<LanguageCode> tests{train};
      for (const auto& p : pairs) {
        if (p.first == train) tests.insert(p.second);
      }
      std::vector<PredictionRecord> out;
      for (const auto& l : tests) {
        auto part = read_predictions(client.predict(m, train, best, qa_file(l), l));
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    });
    for (auto& part : per_job) predictions.insert(predictions.end(), part.begin(), part.end());
  } else {
    throw Error(ErrorKind::kUsage, "evaluation needs a predictions directory or a trainer command");
  }

  TransferReport report =
      build_report(dataset, manifest.value("dataset_hash", ""), predictions, o.models, pairs);
  for (const auto& w : report.warnings) log::warn(w);

  io::write_file(o.out_dir / "report.json", report_to_json(report).dump(2) + "\n");
  io::write_file(o.out_dir / "table1.csv", table1_csv(report));
  for (const auto& s : report.summaries) {
    const std::string stem = "heatmap_" + s.model_id + "_" + s.domain;
    io::write_file(o.out_dir / (stem + ".csv"), heatmap_csv(report, s.model_id, s.domain));
    io::write_file(o.out_dir / (stem + ".json"), heatmap_json(report, s.model_id, s.domain).dump(2) + "\n");
  }
  if (!o.model_sizes.empty()) {
    for (const auto& [dom, series] : size_ablation(report, o.model_sizes)) {
      io::write_file(o.out_dir / ("sizes_" + dom + ".csv"), sizes_csv(series));
    }
  }
  return report;
}

}  // namespace tbench::eval

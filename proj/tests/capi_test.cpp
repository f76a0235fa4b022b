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


// Exercises the library only through its C header.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "tbench/tbench.h"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class Scratch {
 public:
  Scratch() : path_(fs::temp_directory_path() / ("tbench-capi-" + std::to_string(::getpid()) + "-" + std::to_string(n_++))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  std::string operator/(const std::string& rel) const { return (path_ / rel).string(); }

 private:
  static inline int n_ = 0;
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Takes ownership of a library-allocated string.
Json take_json(char* s) {
  EXPECT_NE(s, nullptr);
  if (!s) return Json();
  Json j = Json::parse(s);
  tbench_string_free(s);
  return j;
}

std::string e2e_config() { return std::string(TBENCH_FIXTURES_DIR) + "/e2e/config.json"; }

struct ConfigHandle {
  tbench_config* ptr = nullptr;
  ~ConfigHandle() { tbench_config_free(ptr); }
};

TEST(CApi, VersionAndErrorState) {
  EXPECT_STRNE(tbench_version(), "");
  double v = 0;
  EXPECT_EQ(tbench_transfer_score(0, 0, 3, 1, &v), TBENCH_ERR_DATA);
  EXPECT_STREQ(tbench_last_error_kind(), "NoSourceCorrect");
  EXPECT_STRNE(tbench_last_error(), "");
  EXPECT_EQ(tbench_overall_score(2, 1, 1, 1, &v), TBENCH_OK);
  EXPECT_STREQ(tbench_last_error_kind(), "");
  EXPECT_STREQ(tbench_last_error(), "");
  EXPECT_NEAR(v, 0.4, 1e-12);
  EXPECT_EQ(tbench_transfer_score(2, 1, 1, 1, &v), TBENCH_OK);
  EXPECT_NEAR(v, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(tbench_overall_score(0, 0, 0, 0, &v), TBENCH_ERR_DATA);
  EXPECT_STREQ(tbench_last_error_kind(), "EmptyMatrix");
  EXPECT_EQ(tbench_overall_score(1, 0, 0, 0, nullptr), TBENCH_ERR_CONFIG);
  tbench_string_free(nullptr);
  tbench_set_log_level(TBENCH_LOG_ERROR);
}

TEST(CApi, ConfigSettersRevalidate) {
  ConfigHandle c;
  ASSERT_EQ(tbench_config_load(e2e_config().c_str(), &c.ptr), TBENCH_OK) << tbench_last_error();
  EXPECT_EQ(tbench_config_set_languages(c.ptr, "en, ja"), TBENCH_OK);
  EXPECT_EQ(tbench_config_set_domains(c.ptr, "music"), TBENCH_OK);
  EXPECT_EQ(tbench_config_set_seed(c.ptr, 99), TBENCH_OK);
  char* out = nullptr;
  ASSERT_EQ(tbench_config_to_json(c.ptr, &out), TBENCH_OK);
  const Json j = take_json(out);
  EXPECT_EQ(j.at("languages"), Json::array({"en", "ja"}));
  EXPECT_EQ(j.at("domains"), Json::array({"music"}));
  EXPECT_EQ(j.at("seed"), 99);

  EXPECT_EQ(tbench_config_set_languages(c.ptr, "en"), TBENCH_ERR_CONFIG);
  EXPECT_STREQ(tbench_last_error_kind(), "ValidationError");
  EXPECT_EQ(tbench_config_set_domains(c.ptr, "books"), TBENCH_ERR_CONFIG);
  ASSERT_EQ(tbench_config_to_json(c.ptr, &out), TBENCH_OK);
  EXPECT_EQ(take_json(out).at("languages"), Json::array({"en", "ja"}));  // unchanged by the failures

  EXPECT_EQ(tbench_config_set_seed(nullptr, 1), TBENCH_ERR_CONFIG);
  EXPECT_STREQ(tbench_last_error_kind(), "UsageError");
}

TEST(CApi, ConfigLoadFailures) {
  Scratch dir;
  std::ofstream(dir / "bad.json") << R"({"target_model_id": "m", "knowledge_cutoff": "2024-06",
    "time_range": {"start": "2024-07-01", "end": "2025-01-01"}, "languages": ["en", "ja"]})";
  tbench_config* c = nullptr;
  EXPECT_EQ(tbench_config_load((dir / "bad.json").c_str(), &c), TBENCH_ERR_CONFIG);
  EXPECT_STREQ(tbench_last_error_kind(), "TemporalConflictError");
  EXPECT_EQ(c, nullptr);
  EXPECT_NE(tbench_config_load((dir / "missing.json").c_str(), &c), TBENCH_OK);
  EXPECT_EQ(tbench_config_load(nullptr, &c), TBENCH_ERR_CONFIG);
}

class CApiDataset : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new Scratch();
    ConfigHandle c;
    ASSERT_EQ(tbench_config_load(e2e_config().c_str(), &c.ptr), TBENCH_OK) << tbench_last_error();
    ASSERT_EQ(tbench_config_set_languages(c.ptr, "en,ja,fr"), TBENCH_OK);
    const std::string out = data();
    tbench_run_options o{out.c_str(), 1, 1};
    char* summary = nullptr;
    ASSERT_EQ(tbench_generate(c.ptr, &o, &summary), TBENCH_OK) << tbench_last_error();
    summary_ = take_json(summary);
  }
  static void TearDownTestSuite() { delete dir_; }
  static std::string data() { return *dir_ / "data"; }

  static Scratch* dir_;
  static inline Json summary_;
};
Scratch* CApiDataset::dir_ = nullptr;

TEST_F(CApiDataset, GenerateSummary) {
  const Json& s = summary_;
  EXPECT_EQ(s.at("empty"), false);
  EXPECT_EQ(s.at("stats")[0].at("domain"), "movie");
  EXPECT_EQ(s.at("stats")[0].at("validation"), 58);
  EXPECT_EQ(s.at("stats")[0].at("test"), 2 * 58);
  EXPECT_EQ(s.at("attrition").at("movie").at("fetched"), 17);
  EXPECT_EQ(s.at("dataset_hash").get<std::string>().size(), 64u);
  EXPECT_NE(s.at("stats_table").get<std::string>().find("Total"), std::string::npos);
}

TEST_F(CApiDataset, Stats) {
  char* out = nullptr;
  ASSERT_EQ(tbench_stats(data().c_str(), &out), TBENCH_OK);
  const Json j = take_json(out);
  EXPECT_EQ(j.at("rows"), summary_.at("stats"));
  EXPECT_EQ(j.at("csv").get<std::string>().rfind("domain,entities,pre_split,validation,test\n", 0), 0u);
  EXPECT_EQ(tbench_stats((*dir_ / "nowhere").c_str(), &out), TBENCH_ERR_DATA);
  EXPECT_STREQ(tbench_last_error_kind(), "ManifestMismatch");
}

TEST_F(CApiDataset, RunStageRejectsUnknownNames) {
  ConfigHandle c;
  ASSERT_EQ(tbench_config_load(e2e_config().c_str(), &c.ptr), TBENCH_OK);
  ASSERT_EQ(tbench_config_set_languages(c.ptr, "en,ja,fr"), TBENCH_OK);
  Scratch copy;
  fs::copy(data(), copy / "data", fs::copy_options::recursive);
  const std::string out = copy / "data";
  tbench_run_options o{out.c_str(), 1, 1};
  char* summary = nullptr;
  EXPECT_EQ(tbench_run_stage(c.ptr, "bake", &o, &summary), TBENCH_ERR_CONFIG);
  ASSERT_EQ(tbench_run_stage(c.ptr, "assemble", &o, &summary), TBENCH_OK) << tbench_last_error();
  EXPECT_EQ(take_json(summary).at("dataset_hash"), summary_.at("dataset_hash"));
  tbench_run_options missing{nullptr, 1, 1};
  EXPECT_EQ(tbench_run_stage(c.ptr, "fetch", &missing, nullptr), TBENCH_ERR_CONFIG);
}

TEST_F(CApiDataset, Audit) {
  Scratch out;
  char* summary = nullptr;
  ASSERT_EQ(tbench_audit(data().c_str(), 0.2, 5, "movie", (out / "a").c_str(), &summary), TBENCH_OK)
      << tbench_last_error();
  const Json s = take_json(summary);
  EXPECT_EQ(s.at("population"), 58);
  EXPECT_EQ(s.at("sample_size"), 12);
  const Json bundle = Json::parse(slurp(out / "a/audit.json"));
  EXPECT_EQ(bundle.at("items").size(), 12u);
  EXPECT_TRUE(fs::exists(out / "a/audit.csv"));

  ASSERT_EQ(tbench_audit(data().c_str(), 0.2, 5, "movie", (out / "b").c_str(), nullptr), TBENCH_OK);
  EXPECT_EQ(slurp(out / "b/audit.json"), slurp(out / "a/audit.json"));
  EXPECT_EQ(tbench_audit(data().c_str(), 0.0, 5, nullptr, (out / "c").c_str(), nullptr), TBENCH_ERR_CONFIG);
  EXPECT_EQ(tbench_audit(data().c_str(), 1.5, 5, nullptr, (out / "c").c_str(), nullptr), TBENCH_ERR_CONFIG);
}

TEST_F(CApiDataset, EvaluationWithTrainer) {
  Scratch out;
  tbench_eval* e = nullptr;
  ASSERT_EQ(tbench_eval_new(data().c_str(), (out / "eval").c_str(), &e), TBENCH_OK);
  EXPECT_EQ(tbench_eval_set_pairs(e, "en-ja"), TBENCH_ERR_CONFIG);
  EXPECT_EQ(tbench_eval_set_model_sizes(e, "m1=big"), TBENCH_ERR_CONFIG);
  EXPECT_EQ(tbench_eval_set_trainer(e, "  "), TBENCH_ERR_CONFIG);
  ASSERT_EQ(tbench_eval_set_trainer(e, FAKE_TRAINER_PATH), TBENCH_OK);
  ASSERT_EQ(tbench_eval_set_models(e, "m1,m2"), TBENCH_OK);
  ASSERT_EQ(tbench_eval_set_pairs(e, "en:ja,ja:fr"), TBENCH_OK);
  ASSERT_EQ(tbench_eval_set_model_sizes(e, "m1=7,m2=13"), TBENCH_OK);
  ASSERT_EQ(tbench_eval_set_jobs(e, 2), TBENCH_OK);
  ASSERT_EQ(tbench_eval_set_seed(e, 3), TBENCH_OK);
  char* summary = nullptr;
  ASSERT_EQ(tbench_eval_run(e, &summary), TBENCH_OK) << tbench_last_error();
  tbench_eval_free(e);
  const Json report = take_json(summary);
  EXPECT_EQ(report.at("results").size(), 2u * 3u * 2u);
  EXPECT_EQ(report.at("dataset_hash"), summary_.at("dataset_hash"));
  for (const char* f : {"report.json", "table1.csv", "heatmap_m1_movie.csv", "sizes_sports.csv"}) {
    EXPECT_TRUE(fs::exists(out / ("eval/" + std::string(f)))) << f;
  }

  // The run record hashes outputs but skips the trainer scratch space.
  const char* argv[] = {"eval", "--models", "m1,m2"};
  ASSERT_EQ(tbench_write_run_record((out / "eval").c_str(), "eval", 3, argv), TBENCH_OK);
  const Json record = Json::parse(slurp(out / "eval/run_record.json"));
  EXPECT_EQ(record.at("command"), "eval");
  EXPECT_EQ(record.at("args").size(), 3u);
  EXPECT_EQ(record.at("version"), tbench_version());
  EXPECT_TRUE(record.at("outputs").contains("report.json"));
  for (const auto& [rel, hash] : record.at("outputs").items()) {
    EXPECT_NE(rel.rfind("trainer/", 0), 0u) << rel;
    EXPECT_EQ(hash.get<std::string>().size(), 64u);
  }
}

TEST_F(CApiDataset, EvaluationFailures) {
  Scratch out;
  tbench_eval* e = nullptr;
  ASSERT_EQ(tbench_eval_new(data().c_str(), (out / "eval").c_str(), &e), TBENCH_OK);
  EXPECT_EQ(tbench_eval_run(e, nullptr), TBENCH_ERR_CONFIG);  // neither predictions nor trainer
  ASSERT_EQ(tbench_eval_set_predictions(e, (out / "empty").c_str()), TBENCH_OK);
  fs::create_directories(out / "empty");
  EXPECT_EQ(tbench_eval_run(e, nullptr), TBENCH_ERR_DATA);
  EXPECT_STREQ(tbench_last_error_kind(), "MissingPredictions");
  tbench_eval_free(e);

  Scratch copy;
  fs::copy(data(), copy / "data", fs::copy_options::recursive);
  std::ofstream(copy / "data/validation/qas.jsonl", std::ios::app) << "{}\n";
  ASSERT_EQ(tbench_eval_new((copy / "data").c_str(), (out / "eval2").c_str(), &e), TBENCH_OK);
  ASSERT_EQ(tbench_eval_set_predictions(e, (out / "empty").c_str()), TBENCH_OK);
  EXPECT_EQ(tbench_eval_run(e, nullptr), TBENCH_ERR_DATA);
  EXPECT_STREQ(tbench_last_error_kind(), "ManifestMismatch");
  tbench_eval_free(e);
  EXPECT_EQ(tbench_eval_new(nullptr, "x", &e), TBENCH_ERR_CONFIG);
}

}  // namespace

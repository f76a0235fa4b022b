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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/date.hpp"
#include "core/types.hpp"

namespace tbench {

// One model endpoint: the generation/translation model, the judge, or the
// target model probed by the leakage gate.
struct EndpointConfig {
  std::string kind = "mock";  // mock | http
  std::string url;
  std::string model;
  std::string api_key_env;   // credential is read from this variable, never stored
  std::string mock_fixture;  // canned responses / known entities for the mock
  double temperature = 0.0;
  int max_tokens = 2048;
  int max_attempts = 4;
  int backoff_ms = 500;
  int max_backoff_ms = 8000;
  double requests_per_second = 0.0;  // 0 = unlimited

  bool operator==(const EndpointConfig&) const = default;
};

struct ProviderConfig {
  std::string name;
  Domain domain = Domain::kMovie;
  std::string kind = "fixture";  // fixture | http
  std::string url;
  std::string api_key_env;
  std::string fixture;
  int page_size = 50;
  int max_fetch = 1000;
  int max_attempts = 4;
  int backoff_ms = 500;

  bool operator==(const ProviderConfig&) const = default;
};

struct PipelineConfig {
  std::string target_model_id;
  Date knowledge_cutoff;
  int window_months = 6;
  DateRange time_range;
  std::vector<LanguageCode> languages;  // first entry is the pivot language
  std::vector<Domain> domains;
  int entities_per_domain = 10;
  int questions_per_entity = 6;
  std::uint64_t seed = 0;
  std::string cache_dir = "cache";
  std::string created_at;  // empty = SOURCE_DATE_EPOCH or wall clock at assembly
  std::vector<ProviderConfig> providers;
  EndpointConfig generator;
  EndpointConfig judge;
  EndpointConfig target;

  // Directory relative paths are resolved against; not part of the value.
  std::filesystem::path base_dir;

  const LanguageCode& pivot() const { return languages.front(); }
  std::vector<LanguageCode> target_languages() const {
    return {languages.begin() + 1, languages.end()};
  }
  Date earliest_allowed() const { return add_months(knowledge_cutoff, window_months); }
  std::filesystem::path resolve(const std::string& path) const;

  bool operator==(const PipelineConfig& o) const;
};

// Fills defaults and enforces every invariant. Throws Error(kValidation) naming
// the offending field, or Error(kTemporalConflict) when the range starts before
// cutoff + window.
PipelineConfig validate_config(const Json& raw);

PipelineConfig load_config(const std::filesystem::path& path);

Json config_to_json(const PipelineConfig& config);

// Re-checks invariants after programmatic edits (CLI overrides).
void check_config(const PipelineConfig& config);

}  // namespace tbench

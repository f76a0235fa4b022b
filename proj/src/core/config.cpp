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


#include "core/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace tbench {
namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::kValidation, field + ": " + why);
}

template <typename T>
T get_field(const Json& obj, const std::string& key, const std::string& path, const T& fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    invalid(path + key, "wrong type");
  }
}

template <typename T>
T require_field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) invalid(path + key, "required");
  return get_field<T>(obj, key, path, T{});
}

Date date_field(const Json& obj, const std::string& key, const std::string& path) {
  const auto text = require_field<std::string>(obj, key, path);
  try {
    return parse_date(text);
  } catch (const Error&) {
    invalid(path + key, "unparseable date '" + text + "'");
  }
}

bool is_iso639_1(const std::string& code) {
  return code.size() == 2 && std::islower(static_cast<unsigned char>(code[0])) &&
         std::islower(static_cast<unsigned char>(code[1]));
}

EndpointConfig endpoint_from_json(const Json& j, const std::string& path, const EndpointConfig& defaults) {
  if (!j.is_object()) invalid(path, "must be an object");
  EndpointConfig e = defaults;
  e.kind = get_field<std::string>(j, "kind", path + ".", e.kind);
  e.url = get_field<std::string>(j, "url", path + ".", e.url);
  e.model = get_field<std::string>(j, "model", path + ".", e.model);
  e.api_key_env = get_field<std::string>(j, "api_key_env", path + ".", e.api_key_env);
  e.mock_fixture = get_field<std::string>(j, "mock_fixture", path + ".", e.mock_fixture);
  e.temperature = get_field<double>(j, "temperature", path + ".", e.temperature);
  e.max_tokens = get_field<int>(j, "max_tokens", path + ".", e.max_tokens);
  e.max_attempts = get_field<int>(j, "max_attempts", path + ".", e.max_attempts);
  e.backoff_ms = get_field<int>(j, "backoff_ms", path + ".", e.backoff_ms);
  e.max_backoff_ms = get_field<int>(j, "max_backoff_ms", path + ".", e.max_backoff_ms);
  e.requests_per_second = get_field<double>(j, "requests_per_second", path + ".", e.requests_per_second);
  return e;
}

Json endpoint_to_json(const EndpointConfig& e) {
  return Json{{"kind", e.kind},
              {"url", e.url},
              {"model", e.model},
              {"api_key_env", e.api_key_env},
              {"mock_fixture", e.mock_fixture},
              {"temperature", e.temperature},
              {"max_tokens", e.max_tokens},
              {"max_attempts", e.max_attempts},
              {"backoff_ms", e.backoff_ms},
              {"max_backoff_ms", e.max_backoff_ms},
              {"requests_per_second", e.requests_per_second}};
}

void check_endpoint(const EndpointConfig& e, const std::string& path) {
  if (e.kind != "mock" && e.kind != "http") invalid(path + ".kind", "must be 'mock' or 'http'");
  if (e.kind == "http" && e.url.empty()) invalid(path + ".url", "required for http endpoints");
  if (e.temperature < 0.0) invalid(path + ".temperature", "must be >= 0");
  if (e.max_attempts < 1) invalid(path + ".max_attempts", "must be >= 1");
  if (e.max_tokens < 1) invalid(path + ".max_tokens", "must be >= 1");
  if (e.backoff_ms < 0 || e.max_backoff_ms < 0) invalid(path + ".backoff_ms", "must be >= 0");
}

}  // namespace

std::filesystem::path PipelineConfig::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p;
  return base_dir / p;
}

bool PipelineConfig::operator==(const PipelineConfig& o) const {
  return target_model_id == o.target_model_id && knowledge_cutoff == o.knowledge_cutoff &&
         window_months == o.window_months && time_range.start == o.time_range.start &&
         time_range.end == o.time_range.end && languages == o.languages && domains == o.domains &&
         entities_per_domain == o.entities_per_domain &&
         questions_per_entity == o.questions_per_entity && seed == o.seed &&
         cache_dir == o.cache_dir && created_at == o.created_at && providers == o.providers &&
         generator == o.generator && judge == o.judge && target == o.target;
}

void check_config(const PipelineConfig& c) {
  if (c.window_months < 1) invalid("window_months", "must be >= 1");
  if (c.entities_per_domain < 1) invalid("entities_per_domain", "must be >= 1");
  if (c.questions_per_entity < 1) invalid("questions_per_entity", "must be >= 1");
  if (c.languages.size() < 2) invalid("languages", "need at least 2 distinct language codes");
  std::set<std::string> seen;
  for (const auto& l : c.languages) {
    if (!is_iso639_1(l)) invalid("languages", "'" + l + "' is not an ISO-639-1 code");
    if (!seen.insert(l).second) invalid("languages", "duplicate code '" + l + "'");
  }
  if (c.domains.empty()) invalid("domains", "must name at least one domain");
  std::set<Domain> dseen;
  for (Domain d : c.domains) {
    if (!dseen.insert(d).second) invalid("domains", "duplicate domain '" + std::string(domain_name(d)) + "'");
  }
  if (c.time_range.end < c.time_range.start) invalid("time_range", "start must not be after end");
  const Date earliest = c.earliest_allowed();
  if (c.time_range.start < earliest) {
    throw Error(ErrorKind::kTemporalConflict,
                "time_range.start " + format_date(c.time_range.start) + " precedes knowledge_cutoff + " +
                    std::to_string(c.window_months) + " months (" + format_date(earliest) + ")");
  }
  for (std::size_t i = 0; i < c.providers.size(); ++i) {
    const auto& p = c.providers[i];
    const std::string path = "providers[" + std::to_string(i) + "]";
    if (p.name.empty()) invalid(path + ".name", "required");
    if (p.kind != "fixture" && p.kind != "http") invalid(path + ".kind", "must be 'fixture' or 'http'");
    if (p.kind == "http" && p.url.empty()) invalid(path + ".url", "required for http providers");
    if (p.page_size < 1) invalid(path + ".page_size", "must be >= 1");
    if (p.max_fetch < 1) invalid(path + ".max_fetch", "must be >= 1");
    if (p.max_attempts < 1) invalid(path + ".max_attempts", "must be >= 1");
  }
  check_endpoint(c.generator, "llm.generator");
  check_endpoint(c.judge, "llm.judge");
  check_endpoint(c.target, "llm.target");
}

PipelineConfig validate_config(const Json& raw) {
  if (!raw.is_object()) invalid("<root>", "config must be an object");
  PipelineConfig c;
  c.target_model_id = require_field<std::string>(raw, "target_model_id", "");
  c.knowledge_cutoff = date_field(raw, "knowledge_cutoff", "");
  c.window_months = get_field<int>(raw, "window_months", "", 6);
  if (!raw.contains("time_range") || !raw.at("time_range").is_object()) invalid("time_range", "required");
  c.time_range.start = date_field(raw.at("time_range"), "start", "time_range.");
  c.time_range.end = date_field(raw.at("time_range"), "end", "time_range.");
  c.languages = require_field<std::vector<std::string>>(raw, "languages", "");
  const auto domains = get_field<std::vector<std::string>>(raw, "domains", "", {"movie", "music", "sports"});
  for (const auto& d : domains) {
    try {
      c.domains.push_back(parse_domain(d));
    } catch (const Error&) {
      invalid("domains", "unknown domain '" + d + "'");
    }
  }
  c.entities_per_domain = get_field<int>(raw, "entities_per_domain", "", 10);
  c.questions_per_entity = get_field<int>(raw, "questions_per_entity", "", 6);
  c.seed = get_field<std::uint64_t>(raw, "seed", "", 0);
  c.cache_dir = get_field<std::string>(raw, "cache_dir", "", "cache");
  c.created_at = get_field<std::string>(raw, "created_at", "", "");

  if (raw.contains("providers")) {
    const Json& ps = raw.at("providers");
    if (!ps.is_array()) invalid("providers", "must be an array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string path = "providers[" + std::to_string(i) + "].";
      const Json& p = ps[i];
      ProviderConfig pc;
      pc.name = require_field<std::string>(p, "name", path);
      try {
        pc.domain = parse_domain(require_field<std::string>(p, "domain", path));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kValidation) throw;
        invalid(path + "domain", "unknown domain");
      }
      pc.kind = get_field<std::string>(p, "kind", path, pc.kind);
      pc.url = get_field<std::string>(p, "url", path, "");
      pc.api_key_env = get_field<std::string>(p, "api_key_env", path, "");
      pc.fixture = get_field<std::string>(p, "fixture", path, "");
      pc.page_size = get_field<int>(p, "page_size", path, pc.page_size);
      pc.max_fetch = get_field<int>(p, "max_fetch", path, pc.max_fetch);
      pc.max_attempts = get_field<int>(p, "max_attempts", path, pc.max_attempts);
      pc.backoff_ms = get_field<int>(p, "backoff_ms", path, pc.backoff_ms);
      c.providers.push_back(std::move(pc));
    }
  }

  const Json llm = raw.value("llm", Json::object());
  EndpointConfig gen_defaults;
  gen_defaults.temperature = 0.7;
  c.generator = endpoint_from_json(llm.value("generator", Json::object()), "llm.generator", gen_defaults);
  // The judge defaults to the generator endpoint at temperature 0.
  EndpointConfig judge_defaults = c.generator;
  judge_defaults.temperature = 0.0;
  c.judge = endpoint_from_json(llm.value("judge", Json::object()), "llm.judge", judge_defaults);
  EndpointConfig target_defaults;
  target_defaults.temperature = 0.0;
  c.target = endpoint_from_json(llm.value("target", Json::object()), "llm.target", target_defaults);

  check_config(c);
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kValidation, "cannot open config file " + path.string());
  Json raw;
  try {
    raw = Json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kValidation, "config " + path.string() + ": " + e.what());
  }
  PipelineConfig c = validate_config(raw);
  c.base_dir = std::filesystem::absolute(path).parent_path();
  return c;
}

Json config_to_json(const PipelineConfig& c) {
  Json providers = Json::array();
  for (const auto& p : c.providers) {
    providers.push_back(Json{{"name", p.name},
                             {"domain", domain_name(p.domain)},
                             {"kind", p.kind},
                             {"url", p.url},
                             {"api_key_env", p.api_key_env},
                             {"fixture", p.fixture},
                             {"page_size", p.page_size},
                             {"max_fetch", p.max_fetch},
                             {"max_attempts", p.max_attempts},
                             {"backoff_ms", p.backoff_ms}});
  }
  std::vector<std::string> domains;
  for (Domain d : c.domains) domains.emplace_back(domain_name(d));
  return Json{{"target_model_id", c.target_model_id},
              {"knowledge_cutoff", format_date(c.knowledge_cutoff)},
              {"window_months", c.window_months},
              {"time_range", {{"start", format_date(c.time_range.start)}, {"end", format_date(c.time_range.end)}}},
              {"languages", c.languages},
              {"domains", domains},
              {"entities_per_domain", c.entities_per_domain},
              {"questions_per_entity", c.questions_per_entity},
              {"seed", c.seed},
              {"cache_dir", c.cache_dir},
              {"created_at", c.created_at},
              {"providers", providers},
              {"llm",
               {{"generator", endpoint_to_json(c.generator)},
                {"judge", endpoint_to_json(c.judge)},
                {"target", endpoint_to_json(c.target)}}}};
}

}  // namespace tbench

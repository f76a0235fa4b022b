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


#include "providers/provider.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "core/error.hpp"
#include "core/hash.hpp"
#include "core/http.hpp"
#include "core/io.hpp"
#include "core/log.hpp"
#include "providers/documents.hpp"

namespace tbench::providers {

namespace fs = std::filesystem;

namespace {

std::optional<KnowledgeEntity> parse_item(const Json& item, const ProviderConfig& provider, std::string& why) {
  if (!item.is_object()) {
    why = "record is not an object";
    return std::nullopt;
  }
  const auto id = item.find("entity_id");
  if (id == item.end() || !id->is_string() || id->get<std::string>().empty()) {
    why = "missing entity_id";
    return std::nullopt;
  }
  KnowledgeEntity e;
  e.entity_id = id->get<std::string>();
  e.domain = provider.domain;
  if (item.contains("domain")) {
    if (!item.at("domain").is_string() || item.at("domain").get<std::string>() != domain_name(provider.domain)) {
      why = "domain does not match provider " + provider.name;
      return std::nullopt;
    }
  }
  const auto date = item.find("occurrence_date");
  if (date == item.end() || !date->is_string()) {
    why = "missing occurrence_date";
    return std::nullopt;
  }
  try {
    e.occurrence_date = parse_full_date(date->get<std::string>());
  } catch (const Error&) {
    why = "unparseable occurrence_date '" + date->get<std::string>() + "'";
    return std::nullopt;
  }
  e.payload = item.value("payload", Json::object());
  if (item.contains("display_name") && item.at("display_name").is_string()) {
    e.display_name = item.at("display_name").get<std::string>();
  } else {
    e.display_name = derive_display_name(e.domain, e.payload, e.occurrence_date);
  }
  return e;
}

RawPage raw_page_from_json(const Json& j, const std::string& origin) {
  if (!j.is_object() || !j.contains("items") || !j.at("items").is_array()) {
    throw Error(ErrorKind::kProviderUnavailable, origin + ": response lacks an items array");
  }
  RawPage page;
  page.items = j.at("items").get<std::vector<Json>>();
  if (j.contains("next_cursor") && j.at("next_cursor").is_string() &&
      !j.at("next_cursor").get<std::string>().empty()) {
    page.next_cursor = j.at("next_cursor").get<std::string>();
  }
  return page;
}

Json raw_page_to_json(const RawPage& page) {
  Json j{{"items", page.items}};
  j["next_cursor"] = page.next_cursor ? Json(*page.next_cursor) : Json(nullptr);
  return j;
}

class UnreachableProvider : public EntityProvider {
 public:
  explicit UnreachableProvider(ProviderConfig config) : config_(std::move(config)) {}
  const ProviderConfig& config() const override { return config_; }
  RawPage fetch_raw_page(const DateRange&, const std::optional<std::string>&) override {
    throw Error(ErrorKind::kProviderUnavailable,
                "provider " + config_.name + ": offline mode and no cached response for this request");
  }

 private:
  ProviderConfig config_;
};

}  // namespace

ProviderPage parse_page(const RawPage& raw, const ProviderConfig& provider) {
  ProviderPage page;
  page.next_cursor = raw.next_cursor;
  for (const auto& item : raw.items) {
    std::string why;
    if (auto e = parse_item(item, provider, why)) {
      page.items.push_back(std::move(*e));
    } else {
      log::warn("provider " + provider.name + ": skipping malformed record (" + why + ")");
    }
  }
  return page;
}

std::vector<KnowledgeEntity> fetch_entities(EntityProvider& provider, const DateRange& range, int limit) {
  if (limit < 1) throw Error(ErrorKind::kPrecondition, "fetch_entities: limit must be >= 1");
  std::vector<KnowledgeEntity> out;
  std::set<std::string> seen;
  std::optional<std::string> cursor;
  std::set<std::string> visited_cursors;
  while (true) {
    const ProviderPage page = parse_page(provider.fetch_raw_page(range, cursor), provider.config());
    for (const auto& e : page.items) {
      if (!range.contains(e.occurrence_date)) continue;
      if (!seen.insert(e.entity_id).second) continue;
      out.push_back(e);
    }
    if (static_cast<int>(out.size()) >= limit || !page.next_cursor) break;
    if (!visited_cursors.insert(*page.next_cursor).second) {
      log::warn("provider " + provider.config().name + ": cursor cycle detected, stopping pagination");
      break;
    }
    cursor = page.next_cursor;
  }
  std::stable_sort(out.begin(), out.end(), [](const KnowledgeEntity& a, const KnowledgeEntity& b) {
    if (a.occurrence_date != b.occurrence_date) return a.occurrence_date < b.occurrence_date;
    return a.entity_id < b.entity_id;
  });
  if (static_cast<int>(out.size()) > limit) out.resize(static_cast<std::size_t>(limit));
  return out;
}

std::vector<KnowledgeEntity> temporal_filter(const std::vector<KnowledgeEntity>& entities,
                                             const Date& cutoff, int window_months) {
  const Date earliest = add_months(cutoff, window_months);
  std::vector<KnowledgeEntity> out;
  std::copy_if(entities.begin(), entities.end(), std::back_inserter(out),
               [&](const KnowledgeEntity& e) { return e.occurrence_date >= earliest; });
  return out;
}

SourceDocument render_entity_document(const KnowledgeEntity& entity, const LanguageCode& language) {
  if (!entity.payload.is_object() || entity.payload.empty()) {
    throw Error(ErrorKind::kDocumentUnavailable, "entity " + entity.entity_id + " has no source record");
  }
  const std::string tid = template_for(entity);
  return SourceDocument{entity.entity_id, language, render_document(tid, payload_fields(entity.payload)), tid};
}

SourceDocument fetch_document(const EntityProvider& provider, const KnowledgeEntity& entity,
                              const LanguageCode& language) {
  if (entity.domain != provider.domain()) {
    throw Error(ErrorKind::kPrecondition, "entity " + entity.entity_id + " is not in provider " +
                                              provider.config().name + "'s domain");
  }
  return render_entity_document(entity, language);
}

FixtureProvider::FixtureProvider(ProviderConfig config, const fs::path& fixture_path)
    : config_(std::move(config)) {
  Json j;
  try {
    j = Json::parse(io::read_file(fixture_path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kValidation, "fixture " + fixture_path.string() + ": " + e.what());
  }
  if (!j.contains("items") || !j.at("items").is_array()) {
    throw Error(ErrorKind::kValidation, "fixture " + fixture_path.string() + " lacks an items array");
  }
  items_ = j.at("items").get<std::vector<Json>>();
}

FixtureProvider::FixtureProvider(ProviderConfig config, std::vector<Json> items)
    : config_(std::move(config)), items_(std::move(items)) {}

RawPage FixtureProvider::fetch_raw_page(const DateRange& range, const std::optional<std::string>& cursor) {
  std::vector<const Json*> matching;
  for (const auto& item : items_) {
    // Records without a readable date are passed through so the caller can
    // report them; the source itself does not validate.
    bool in_range = true;
    if (item.is_object() && item.contains("occurrence_date") && item.at("occurrence_date").is_string()) {
      try {
        in_range = range.contains(parse_full_date(item.at("occurrence_date").get<std::string>()));
      } catch (const Error&) {
      }
    }
    if (in_range) matching.push_back(&item);
  }
  std::size_t offset = 0;
  if (cursor) offset = std::stoul(cursor->substr(cursor->find(':') + 1));
  RawPage page;
  const std::size_t end = std::min(matching.size(), offset + static_cast<std::size_t>(config_.page_size));
  for (std::size_t i = offset; i < end; ++i) page.items.push_back(*matching[i]);
  if (end < matching.size()) page.next_cursor = "offset:" + std::to_string(end);
  return page;
}

HttpProvider::HttpProvider(ProviderConfig config, SleepFn sleep)
    : config_(std::move(config)), sleep_(std::move(sleep)) {
  if (!config_.api_key_env.empty()) {
    const char* v = std::getenv(config_.api_key_env.c_str());
    if (v == nullptr || *v == '\0') {
      throw Error(ErrorKind::kProviderAuth,
                  "provider " + config_.name + ": credential variable " + config_.api_key_env + " is not set");
    }
    token_ = v;
  }
}

RawPage HttpProvider::fetch_raw_page(const DateRange& range, const std::optional<std::string>& cursor) {
  std::string url = config_.url + "/entities?domain=" + std::string(domain_name(config_.domain)) +
                    "&start=" + format_date(range.start) + "&end=" + format_date(range.end) +
                    "&limit=" + std::to_string(config_.page_size);
  if (cursor) url += "&cursor=" + http::url_encode(*cursor);
  http::Headers headers{{"Accept", "application/json"}};
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  const RetryPolicy policy{config_.max_attempts, std::chrono::milliseconds(config_.backoff_ms),
                           std::chrono::milliseconds(config_.backoff_ms * 16)};
  std::string last;
  for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
    sleep_(policy.delay_before(attempt));
    const http::Response res = http::get(url, headers);
    if (res.status == 401 || res.status == 403) {
      throw Error(ErrorKind::kProviderAuth, "provider " + config_.name + " rejected credentials (HTTP " +
                                                std::to_string(res.status) + ")");
    }
    if (!res.retryable()) {
      if (res.status != 200) {
        throw Error(ErrorKind::kProviderUnavailable,
                    "provider " + config_.name + " returned HTTP " + std::to_string(res.status));
      }
      try {
        return raw_page_from_json(Json::parse(res.body), config_.name);
      } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::kProviderUnavailable, "provider " + config_.name + ": " + e.what());
      }
    }
    last = res.transport_failed() ? res.transport_error : "HTTP " + std::to_string(res.status);
    log::warn("provider " + config_.name + " attempt " + std::to_string(attempt) + " failed: " + last);
  }
  throw Error(ErrorKind::kProviderUnavailable, "provider " + config_.name + " unavailable after " +
                                                   std::to_string(policy.max_attempts) + " attempts: " + last);
}

CachingProvider::CachingProvider(std::unique_ptr<EntityProvider> inner, fs::path root, bool offline)
    : inner_(std::move(inner)), root_(std::move(root)), offline_(offline) {}

fs::path CachingProvider::cache_path(const DateRange& range, const std::optional<std::string>& cursor) const {
  const ProviderConfig& c = inner_->config();
  const Json request{{"provider", c.name},
                     {"domain", domain_name(c.domain)},
                     {"start", format_date(range.start)},
                     {"end", format_date(range.end)},
                     {"cursor", cursor ? Json(*cursor) : Json(nullptr)},
                     {"page_size", c.page_size}};
  return root_ / c.name / (sha256_hex(request.dump()) + ".json");
}

RawPage CachingProvider::fetch_raw_page(const DateRange& range, const std::optional<std::string>& cursor) {
  const fs::path path = cache_path(range, cursor);
  if (fs::exists(path)) {
    try {
      return raw_page_from_json(Json::parse(io::read_file(path)), path.string());
    } catch (const Json::parse_error& e) {
      log::warn("ignoring corrupt cache entry " + path.string() + ": " + e.what());
    }
  }
  RawPage page = inner_->fetch_raw_page(range, cursor);
  if (!offline_) {
    std::lock_guard lock(write_mu_);
    io::write_file(path, raw_page_to_json(page).dump(2) + "\n");
  }
  return page;
}

std::unique_ptr<EntityProvider> make_provider(const PipelineConfig& config, const ProviderConfig& provider,
                                              bool offline) {
  std::unique_ptr<EntityProvider> inner;
  if (provider.kind == "fixture") {
    if (provider.fixture.empty()) {
      throw Error(ErrorKind::kValidation, "providers." + provider.name + ".fixture: required for fixture providers");
    }
    // Fixtures are local files; they are served directly and never cached.
    return std::make_unique<FixtureProvider>(provider, config.resolve(provider.fixture));
  }
  if (offline) {
    inner = std::make_unique<UnreachableProvider>(provider);
  } else {
    inner = std::make_unique<HttpProvider>(provider);
  }
  return std::make_unique<CachingProvider>(std::move(inner), config.resolve(config.cache_dir), offline);
}

const ProviderConfig* provider_for(const PipelineConfig& config, Domain domain) {
  for (const auto& p : config.providers) {
    if (p.domain == domain) return &p;
  }
  return nullptr;
}

}  // namespace tbench::providers

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
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/retry.hpp"
#include "core/types.hpp"

namespace tbench::providers {

// Page as returned by a source, before record validation.
struct RawPage {
  std::vector<Json> items;
  std::optional<std::string> next_cursor;
};

struct ProviderPage {
  std::vector<KnowledgeEntity> items;
  std::optional<std::string> next_cursor;
};

// A per-domain source of time-stamped entities.
class EntityProvider {
 public:
  virtual ~EntityProvider() = default;

  virtual const ProviderConfig& config() const = 0;
  Domain domain() const { return config().domain; }

  virtual RawPage fetch_raw_page(const DateRange& range, const std::optional<std::string>& cursor) = 0;
};

// Validates raw items; malformed ones (missing/unparseable date, wrong domain,
// no id) are skipped with a logged warning.
ProviderPage parse_page(const RawPage& raw, const ProviderConfig& provider);

// Pages until `limit` in-range entities are collected or the source is
// exhausted. Result is ordered by (occurrence_date, entity_id), deduplicated by
// entity_id, and truncated to `limit`. limit < 1 is a precondition error.
std::vector<KnowledgeEntity> fetch_entities(EntityProvider& provider, const DateRange& range, int limit);

// Entities with occurrence_date >= cutoff + window_months (inclusive), input
// order preserved.
std::vector<KnowledgeEntity> temporal_filter(const std::vector<KnowledgeEntity>& entities,
                                             const Date& cutoff, int window_months);

// Renders the canonical document from the entity payload in `language`.
SourceDocument fetch_document(const EntityProvider& provider, const KnowledgeEntity& entity,
                              const LanguageCode& language);
SourceDocument render_entity_document(const KnowledgeEntity& entity, const LanguageCode& language);

// Serves a local fixture file {"items": [...]} with server-side range filtering
// and offset cursors.
class FixtureProvider : public EntityProvider {
 public:
  FixtureProvider(ProviderConfig config, const std::filesystem::path& fixture_path);
  FixtureProvider(ProviderConfig config, std::vector<Json> items);

  const ProviderConfig& config() const override { return config_; }
  RawPage fetch_raw_page(const DateRange& range, const std::optional<std::string>& cursor) override;

 private:
  ProviderConfig config_;
  std::vector<Json> items_;
};

// GET {url}/entities?domain=&start=&end=&limit=[&cursor=] returning
// {"items": [...], "next_cursor": "..."}; bearer token from config.api_key_env.
class HttpProvider : public EntityProvider {
 public:
  // Throws Error(kProviderAuth) when the credential variable is unset.
  explicit HttpProvider(ProviderConfig config, SleepFn sleep = real_sleep());

  const ProviderConfig& config() const override { return config_; }
  RawPage fetch_raw_page(const DateRange& range, const std::optional<std::string>& cursor) override;

 private:
  ProviderConfig config_;
  std::string token_;
  SleepFn sleep_;
};

// Content-addressed page cache: <root>/<provider>/<sha256 of request>.json.
// Hits replay the stored page; misses go to the inner provider unless offline.
class CachingProvider : public EntityProvider {
 public:
  CachingProvider(std::unique_ptr<EntityProvider> inner, std::filesystem::path root, bool offline);

  const ProviderConfig& config() const override { return inner_->config(); }
  RawPage fetch_raw_page(const DateRange& range, const std::optional<std::string>& cursor) override;

  std::filesystem::path cache_path(const DateRange& range, const std::optional<std::string>& cursor) const;

 private:
  std::unique_ptr<EntityProvider> inner_;
  std::filesystem::path root_;
  bool offline_;
  std::mutex write_mu_;
};

// Builds the provider stack for one configured provider. Offline mode never
// touches the network: http providers are served from the cache only.
std::unique_ptr<EntityProvider> make_provider(const PipelineConfig& config, const ProviderConfig& provider,
                                              bool offline);

// First configured provider for the domain wins.
const ProviderConfig* provider_for(const PipelineConfig& config, Domain domain);

}  // namespace tbench::providers

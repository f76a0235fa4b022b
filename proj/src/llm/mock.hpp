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
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "llm/gateway.hpp"

namespace tbench::llm {

// Deterministic key of a request: template key plus SHA-256 of the bindings.
std::string mock_key(const LlmRequest& request);
std::string mock_key(const std::string& template_key, const Bindings& bindings);

// Zero-network backend. Lookup order: canned responses keyed by mock_key (a
// list is served in order, the last entry repeating), then the responder, then
// a fatal "no mock response" result.
class MockBackend : public LlmBackend {
 public:
  using Responder = std::function<std::optional<std::string>(const LlmRequest&)>;

  void add_canned(const std::string& template_key, const Bindings& bindings, std::vector<std::string> responses);
  void set_responder(Responder responder);

  // Canned entries from {"canned": [{"template_id", "bindings", "responses"}]}.
  void load_canned(const Json& fixture);

  // Every successful call recorded in an audit log becomes a canned response,
  // so replaying the log reproduces the run.
  static std::shared_ptr<MockBackend> from_audit_log(const std::filesystem::path& path);

  BackendResult send(const LlmRequest& request, const std::string& prompt) override;

  int call_count(const std::string& key) const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::vector<std::string>> canned_;
  std::map<std::string, int> calls_;
  Responder responder_;
};

// Rule-based stand-in for the generation, judge and target models, used by
// offline runs and tests. It reads the same bindings a real model would see.
class SimulatedModel {
 public:
  enum class TranslationMode { kPseudo, kIdentity };

  struct Options {
    // display name -> probe answer; any other entity gets a no-knowledge reply
    std::map<std::string, std::string> known_entities;
    TranslationMode translation = TranslationMode::kPseudo;
  };

  SimulatedModel() = default;
  explicit SimulatedModel(Options options) : options_(std::move(options)) {}

  // Reads {"known_entities": {...}, "translation_mode": "pseudo"|"identity"}.
  static Options options_from_json(const Json& fixture);

  std::optional<std::string> respond(const LlmRequest& request) const;

  static constexpr const char* kNoKnowledgeReply = "I don't have information about this.";

 private:
  std::string probe(const Bindings& b) const;
  std::string judge(const Bindings& b) const;
  std::string generate(const std::string& domain, const Bindings& b) const;
  std::string verify(const Bindings& b) const;
  std::string translate_qa(const Bindings& b) const;
  std::string translate_document(const std::string& template_id, const Bindings& b) const;
  std::string translate_value(const std::string& value, const std::string& lang) const;

  Options options_;
};

// Mock backend wired to a SimulatedModel plus any canned entries in the fixture
// file (empty path = simulated model only).
std::shared_ptr<MockBackend> make_fixture_backend(const std::filesystem::path& fixture_path);

}  // namespace tbench::llm

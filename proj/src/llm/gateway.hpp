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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <string>

#include "core/config.hpp"
#include "core/placeholder.hpp"
#include "core/retry.hpp"
#include "llm/prompts.hpp"

namespace tbench::llm {

struct DecodingParams {
  double temperature = 0.0;
  int max_tokens = 2048;
};

struct LlmRequest {
  PromptId template_id = PromptId::kQaGenerate;
  std::string variant;  // see prompt_template()
  Bindings bindings;
  DecodingParams decoding;
  std::string endpoint_id;  // generator | judge | target

  std::string key() const { return template_key(template_id, variant); }
};

struct LlmResponse {
  std::string raw_text;
  int prompt_tokens = 0;
  int completion_tokens = 0;
  double latency_ms = 0.0;
  int attempt_count = 0;
};

// One transport round trip. Backends never retry; the gateway does.
struct BackendResult {
  enum class Status { kOk, kTransient, kRefused, kFatal };
  Status status = Status::kOk;
  std::string text;
  int prompt_tokens = 0;
  int completion_tokens = 0;
  std::string error;
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual BackendResult send(const LlmRequest& request, const std::string& prompt) = 0;
};

// OpenAI-compatible POST {url}/chat/completions; bearer token from the env
// variable named by the endpoint config.
class HttpBackend : public LlmBackend {
 public:
  // Throws Error(kProviderAuth) when the credential variable is unset.
  explicit HttpBackend(EndpointConfig config);
  BackendResult send(const LlmRequest& request, const std::string& prompt) override;

 private:
  EndpointConfig config_;
  std::string token_;
};

// Append-only line-delimited JSON log of every call.
class AuditLog {
 public:
  explicit AuditLog(const std::filesystem::path& path);
  void append(const Json& record);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
  std::ofstream out_;
};

class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second) : rps_(requests_per_second) {}
  void acquire();

 private:
  double rps_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_{};
};

struct GatewayOptions {
  RetryPolicy retry;
  double requests_per_second = 0.0;
  std::string model;
};

// Single choke point for model calls: renders the prompt, rate-limits, retries
// transient failures with exponential backoff, and records each call.
class Gateway {
 public:
  Gateway(std::shared_ptr<LlmBackend> backend, GatewayOptions options, std::shared_ptr<AuditLog> audit = nullptr,
          SleepFn sleep = real_sleep());

  // Throws Error(kLlmExhausted) when attempts run out or the backend fails
  // permanently, Error(kLlmRefusal) on empty/blocked content, and
  // Error(kMissingPlaceholder) before any call when bindings are incomplete.
  LlmResponse complete(const LlmRequest& request);

  const GatewayOptions& options() const { return options_; }

 private:
  std::shared_ptr<LlmBackend> backend_;
  GatewayOptions options_;
  std::shared_ptr<AuditLog> audit_;
  SleepFn sleep_;
  RateLimiter limiter_;
};

GatewayOptions gateway_options(const EndpointConfig& endpoint);

}  // namespace tbench::llm

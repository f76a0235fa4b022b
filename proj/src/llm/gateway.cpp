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


#include "llm/gateway.hpp"

#include <cstdlib>

#include "core/error.hpp"
#include "core/http.hpp"
#include "core/log.hpp"

namespace tbench::llm {

namespace fs = std::filesystem;

HttpBackend::HttpBackend(EndpointConfig config) : config_(std::move(config)) {
  if (!config_.api_key_env.empty()) {
    const char* v = std::getenv(config_.api_key_env.c_str());
    if (v == nullptr || *v == '\0') {
      throw Error(ErrorKind::kProviderAuth, "LLM endpoint credential variable " + config_.api_key_env + " is not set");
    }
    token_ = v;
  }
}

BackendResult HttpBackend::send(const LlmRequest& request, const std::string& prompt) {
  const Json body{{"model", config_.model},
                  {"messages", Json::array({Json{{"role", "user"}, {"content", prompt}}})},
                  {"temperature", request.decoding.temperature},
                  {"max_tokens", request.decoding.max_tokens}};
  http::Headers headers{{"Accept", "application/json"}};
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
  const http::Response res = http::post_json(config_.url + "/chat/completions", headers, body.dump());

  BackendResult out;
  if (res.retryable()) {
    out.status = BackendResult::Status::kTransient;
    out.error = res.transport_failed() ? res.transport_error : "HTTP " + std::to_string(res.status);
    return out;
  }
  if (res.status != 200) {
    out.status = BackendResult::Status::kFatal;
    out.error = "HTTP " + std::to_string(res.status) + ": " + res.body.substr(0, 200);
    return out;
  }
  try {
    const Json j = Json::parse(res.body);
    const Json& choice = j.at("choices").at(0);
    const Json& content = choice.at("message").at("content");
    out.text = content.is_string() ? content.get<std::string>() : "";
    if (choice.value("finish_reason", "") == "content_filter") {
      out.status = BackendResult::Status::kRefused;
      out.error = "content filtered";
    }
    if (j.contains("usage")) {
      out.prompt_tokens = j["usage"].value("prompt_tokens", 0);
      out.completion_tokens = j["usage"].value("completion_tokens", 0);
    }
  } catch (const Json::exception& e) {
    out.status = BackendResult::Status::kTransient;
    out.error = std::string("unreadable completion body: ") + e.what();
  }
  return out;
}

AuditLog::AuditLog(const fs::path& path) : path_(path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  out_.open(path, std::ios::app | std::ios::binary);
  if (!out_) throw Error(ErrorKind::kIo, "cannot open audit log " + path.string());
}

void AuditLog::append(const Json& record) {
  std::lock_guard lock(mu_);
  out_ << record.dump() << '\n';
  out_.flush();
}

void RateLimiter::acquire() {
  if (rps_ <= 0.0) return;
  const auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / rps_));
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mu_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval;
  }
  std::this_thread::sleep_until(slot);
}

Gateway::Gateway(std::shared_ptr<LlmBackend> backend, GatewayOptions options, std::shared_ptr<AuditLog> audit,
                 SleepFn sleep)
    : backend_(std::move(backend)),
      options_(std::move(options)),
      audit_(std::move(audit)),
      sleep_(std::move(sleep)),
      limiter_(options_.requests_per_second) {}

LlmResponse Gateway::complete(const LlmRequest& request) {
  const std::string prompt = render_prompt(request.template_id, request.variant, request.bindings);
  const auto started = std::chrono::steady_clock::now();

  Json attempts = Json::array();
  LlmResponse response;
  std::optional<Error> failure;
  for (int attempt = 1; attempt <= options_.retry.max_attempts; ++attempt) {
    sleep_(options_.retry.delay_before(attempt));
    limiter_.acquire();
    const BackendResult r = backend_->send(request, prompt);
    response.attempt_count = attempt;
    attempts.push_back(Json{{"attempt", attempt}, {"status", static_cast<int>(r.status)}, {"error", r.error}});
    if (r.status == BackendResult::Status::kOk && !r.text.empty()) {
      response.raw_text = r.text;
      response.prompt_tokens = r.prompt_tokens;
      response.completion_tokens = r.completion_tokens;
      failure.reset();
      break;
    }
    if (r.status == BackendResult::Status::kRefused ||
        (r.status == BackendResult::Status::kOk && r.text.empty())) {
      failure = Error(ErrorKind::kLlmRefusal, request.key() + ": " + (r.error.empty() ? "empty response" : r.error));
      break;
    }
    if (r.status == BackendResult::Status::kFatal) {
      failure = Error(ErrorKind::kLlmExhausted, request.key() + ": " + r.error);
      break;
    }
    log::debug(request.key() + " attempt " + std::to_string(attempt) + " failed: " + r.error);
    failure = Error(ErrorKind::kLlmExhausted, request.key() + ": " + std::to_string(attempt) +
                                                  " attempts failed, last error: " + r.error);
  }
  response.latency_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

  if (audit_) {
    Json bindings = Json::object();
    for (const auto& [k, v] : request.bindings) bindings[k] = v;
    audit_->append(Json{{"endpoint", request.endpoint_id},
                        {"model", options_.model},
                        {"template_id", request.key()},
                        {"bindings", bindings},
                        {"temperature", request.decoding.temperature},
                        {"max_tokens", request.decoding.max_tokens},
                        {"raw_text", response.raw_text},
                        {"attempts", attempts},
                        {"ok", !failure.has_value()},
                        {"usage", {{"prompt_tokens", response.prompt_tokens},
                                   {"completion_tokens", response.completion_tokens}}},
                        {"latency_ms", response.latency_ms}});
  }
  if (failure) throw *failure;
  return response;
}

GatewayOptions gateway_options(const EndpointConfig& endpoint) {
  GatewayOptions o;
  o.retry.max_attempts = endpoint.max_attempts;
  o.retry.base_delay = std::chrono::milliseconds(endpoint.backoff_ms);
  o.retry.max_delay = std::chrono::milliseconds(endpoint.max_backoff_ms);
  o.requests_per_second = endpoint.requests_per_second;
  o.model = endpoint.model;
  return o;
}

}  // namespace tbench::llm

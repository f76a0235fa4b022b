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


#include "core/log.hpp"

#include <iostream>
#include <mutex>

namespace tbench::log {
namespace {

std::mutex g_mu;
Level g_min = Level::kInfo;

void stderr_sink(Level level, std::string_view message) {
  static constexpr const char* kNames[] = {"debug", "info", "warn", "error"};
  std::cerr << "[" << kNames[static_cast<int>(level)] << "] " << message << '\n';
}

Sink& sink_ref() {
  static Sink sink = stderr_sink;
  return sink;
}

}  // namespace

Sink set_sink(Sink sink) {
  std::lock_guard lock(g_mu);
  Sink prev = std::move(sink_ref());
  sink_ref() = sink ? std::move(sink) : Sink(stderr_sink);
  return prev;
}

void set_min_level(Level level) {
  std::lock_guard lock(g_mu);
  g_min = level;
}

void write(Level level, std::string_view message) {
  std::lock_guard lock(g_mu);
  if (level < g_min) return;
  sink_ref()(level, message);
}

}  // namespace tbench::log

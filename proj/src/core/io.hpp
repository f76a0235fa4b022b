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
#include <string>
#include <vector>

#include "core/types.hpp"

namespace tbench::io {

std::string read_file(const std::filesystem::path& path);

// Writes through a temporary sibling and renames, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

// Each record on one line, compact, keys sorted, trailing newline.
std::string to_jsonl(const std::vector<Json>& records);
std::vector<Json> parse_jsonl(const std::string& content, const std::string& origin);

std::vector<Json> read_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& records);

template <typename T, typename F>
std::vector<Json> to_json_records(const std::vector<T>& items, F&& to_json_fn) {
  std::vector<Json> out;
  out.reserve(items.size());
  for (const auto& it : items) out.push_back(to_json_fn(it));
  return out;
}

}  // namespace tbench::io

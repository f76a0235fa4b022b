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


#include "llm/json_extract.hpp"

#include <optional>
#include <string>

#include "core/error.hpp"

namespace tbench::llm {
namespace {

// End offset (exclusive) of the balanced object starting at `start`, honoring
// string literals and escapes.
std::optional<std::size_t> balanced_end(std::string_view s, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      if (--depth == 0) return i + 1;
      if (depth < 0) return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

Json extract_json(std::string_view raw) {
  std::size_t first = raw.find('{');
  if (first == std::string_view::npos) throw Error(ErrorKind::kJsonNotFound, "no JSON object in model output");

  // A balanced span that fails to parse (prose such as "{name}") is skipped as
  // a whole; candidates nested inside it are never tried.
  std::string first_error;
  for (std::size_t start = first; start != std::string_view::npos;) {
    const auto end = balanced_end(raw, start);
    if (!end) {
      if (first_error.empty()) first_error = "unbalanced JSON object starting at offset " + std::to_string(start);
      break;
    }
    try {
      return Json::parse(raw.substr(start, *end - start));
    } catch (const Json::parse_error& e) {
      if (first_error.empty()) {
        first_error = "invalid JSON at offset " + std::to_string(start + (e.byte > 0 ? e.byte - 1 : 0)) + ": " +
                      e.what();
      }
    }
    start = raw.find('{', *end);
  }
  throw Error(ErrorKind::kJsonMalformed, first_error);
}

}  // namespace tbench::llm

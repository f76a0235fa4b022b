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


#include "core/placeholder.hpp"

namespace tbench {
namespace {

// Length of the placeholder starting at tmpl[pos] == '{', or 0.
std::size_t placeholder_len(std::string_view tmpl, std::size_t pos) {
  std::size_t i = pos + 1;
  while (i < tmpl.size() && ((tmpl[i] >= 'a' && tmpl[i] <= 'z') || tmpl[i] == '_')) ++i;
  if (i == pos + 1 || i >= tmpl.size() || tmpl[i] != '}') return 0;
  return i - pos + 1;
}

}  // namespace

std::set<std::string> find_placeholders(std::string_view tmpl) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') continue;
    if (const std::size_t len = placeholder_len(tmpl, i)) {
      out.emplace(tmpl.substr(i + 1, len - 2));
      i += len - 1;
    }
  }
  return out;
}

std::string substitute(std::string_view tmpl, const Bindings& bindings, ErrorKind missing_kind) {
  std::string out;
  out.reserve(tmpl.size());
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '{') {
      if (const std::size_t len = placeholder_len(tmpl, i)) {
        const std::string name(tmpl.substr(i + 1, len - 2));
        const auto it = bindings.find(name);
        if (it == bindings.end()) throw Error(missing_kind, name);
        out += it->second;
        i += len - 1;
        continue;
      }
    }
    out.push_back(tmpl[i]);
  }
  return out;
}

}  // namespace tbench

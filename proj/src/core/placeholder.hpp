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

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "core/error.hpp"

namespace tbench {

using Bindings = std::map<std::string, std::string>;

// Placeholders are `{name}` with name in [a-z_]+; any other brace is literal text.
std::set<std::string> find_placeholders(std::string_view tmpl);

// Single pass: substituted values are never re-expanded. A placeholder without a
// binding throws Error(missing_kind, name).
std::string substitute(std::string_view tmpl, const Bindings& bindings, ErrorKind missing_kind);

}  // namespace tbench

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

#include <string_view>

#include "core/types.hpp"

namespace tbench::llm {

// Finds the first balanced JSON object in model output and parses it strictly.
// Code fences and surrounding prose are tolerated; nothing else is repaired.
// Throws Error(kJsonNotFound) when the text has no '{', Error(kJsonMalformed)
// (message carries the byte offset) when no balanced object parses.
Json extract_json(std::string_view raw);

}  // namespace tbench::llm

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

#include <string>
#include <string_view>
#include <vector>

namespace tbench::text {

// Unicode NFC. Invalid UTF-8 is rejected with Error(kValidation).
std::string nfc(std::string_view utf8);

// Unicode case folding.
std::string casefold(std::string_view utf8);

// Casefold, collapse whitespace runs to one space, trim, and strip trailing
// sentence punctuation. Used to compare verifier-cited sentences to documents.
std::string normalize_for_match(std::string_view utf8);

// True when normalize_for_match(needle) occurs inside normalize_for_match(haystack).
bool normalized_contains(std::string_view haystack, std::string_view needle);

bool contains_ci(std::string_view haystack, std::string_view needle);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_lines(std::string_view s);

// Splits prose into sentences on '.', '!' or '?' followed by whitespace or end.
std::vector<std::string> split_sentences(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace tbench::text

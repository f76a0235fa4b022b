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


#include "core/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "core/error.hpp"

namespace tbench::text {
namespace {

// fromUTF8 substitutes U+FFFD for ill-formed input, so validate first.
void require_valid_utf8(std::string_view s) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t n = static_cast<int32_t>(s.size());
  for (int32_t i = 0; i < n;) {
    UChar32 c = 0;
    U8_NEXT(p, i, n, c);
    if (c < 0) throw Error(ErrorKind::kValidation, "invalid UTF-8 text");
  }
}

icu::UnicodeString from_utf8(std::string_view s) {
  require_valid_utf8(s);
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  if (u.isBogus()) throw Error(ErrorKind::kValidation, "invalid UTF-8 text");
  return u;
}

std::string to_utf8(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_terminal_punct(char c) { return c == '.' || c == '!' || c == '?' || c == ';' || c == ','; }

}  // namespace

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorKind::kInternal, "ICU NFC normalizer unavailable");
  icu::UnicodeString out = norm->normalize(from_utf8(utf8), status);
  if (U_FAILURE(status)) throw Error(ErrorKind::kValidation, "NFC normalization failed");
  return to_utf8(out);
}

std::string casefold(std::string_view utf8) {
  icu::UnicodeString u = from_utf8(utf8);
  u.foldCase();
  return to_utf8(u);
}

std::string normalize_for_match(std::string_view utf8) {
  const std::string folded = casefold(utf8);
  std::string out;
  out.reserve(folded.size());
  bool pending_space = false;
  for (char c : folded) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  while (!out.empty() && (is_terminal_punct(out.back()) || out.back() == ' ')) out.pop_back();
  return out;
}

bool normalized_contains(std::string_view haystack, std::string_view needle) {
  const std::string n = normalize_for_match(needle);
  if (n.empty()) return false;
  return normalize_for_match(haystack).find(n) != std::string::npos;
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  return casefold(haystack).find(casefold(needle)) != std::string::npos;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view s) {
  std::vector<std::string> lines = split(s, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
  }
  return lines;
}

std::vector<std::string> split_sentences(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < s.size(); ++i) {
    current.push_back(s[i]);
    const bool end_mark = s[i] == '.' || s[i] == '!' || s[i] == '?';
    if (end_mark && (i + 1 == s.size() || is_space(s[i + 1]))) {
      std::string t = trim(current);
      if (!t.empty()) out.push_back(std::move(t));
      current.clear();
    }
  }
  std::string t = trim(current);
  if (!t.empty()) out.push_back(std::move(t));
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace tbench::text

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


#include "core/date.hpp"

#include <charconv>
#include <cstdio>

#include "core/error.hpp"

namespace tbench {
namespace {

bool parse_uint(std::string_view text, unsigned& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

Date parse_impl(std::string_view text, bool allow_month_only) {
  auto fail = [&] {
    return Error(ErrorKind::kValidation, "unparseable date '" + std::string(text) + "'");
  };
  unsigned y = 0, m = 0, d = 1;
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    if (!parse_uint(text.substr(0, 4), y) || !parse_uint(text.substr(5, 2), m) ||
        !parse_uint(text.substr(8, 2), d)) {
      throw fail();
    }
  } else if (allow_month_only && text.size() == 7 && text[4] == '-') {
    if (!parse_uint(text.substr(0, 4), y) || !parse_uint(text.substr(5, 2), m)) throw fail();
  } else {
    throw fail();
  }
  Date date{std::chrono::year(static_cast<int>(y)), std::chrono::month(m), std::chrono::day(d)};
  if (!date.ok()) throw fail();
  return date;
}

}  // namespace

Date parse_date(std::string_view text) { return parse_impl(text, true); }

Date parse_full_date(std::string_view text) { return parse_impl(text, false); }

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

Date add_months(const Date& date, int months) {
  std::chrono::year_month ym = date.year() / date.month();
  ym += std::chrono::months(months);
  const std::chrono::year_month_day_last last{ym.year(), std::chrono::month_day_last(ym.month())};
  const std::chrono::day day = date.day() > last.day() ? last.day() : date.day();
  return Date{ym.year(), ym.month(), day};
}

}  // namespace tbench

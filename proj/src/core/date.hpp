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

#include <chrono>
#include <string>
#include <string_view>

namespace tbench {

using Date = std::chrono::year_month_day;

// Parses "YYYY-MM-DD". A month-only "YYYY-MM" normalizes to the first day of
// that month. Throws Error(kValidation) on anything else.
Date parse_date(std::string_view text);

// Like parse_date but rejects the month-only form.
Date parse_full_date(std::string_view text);

std::string format_date(const Date& date);

// Calendar-month addition. The day of month is kept when it exists in the
// target month, otherwise it clamps to the last day (2024-08-31 + 6 -> 2025-02-28).
Date add_months(const Date& date, int months);

struct DateRange {
  Date start;
  Date end;

  bool contains(const Date& d) const { return start <= d && d <= end; }
};

}  // namespace tbench

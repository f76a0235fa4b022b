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

#include <algorithm>
#include <chrono>
#include <functional>
#include <thread>

namespace tbench {

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds base_delay{500};
  std::chrono::milliseconds max_delay{8000};

  // Delay before attempt `attempt` (1-based; attempt 1 has no delay).
  std::chrono::milliseconds delay_before(int attempt) const {
    if (attempt <= 1) return std::chrono::milliseconds(0);
    auto d = base_delay;
    for (int i = 2; i < attempt && d < max_delay; ++i) d *= 2;
    return std::min(d, max_delay);
  }
};

using SleepFn = std::function<void(std::chrono::milliseconds)>;

inline SleepFn real_sleep() {
  return [](std::chrono::milliseconds d) {
    if (d.count() > 0) std::this_thread::sleep_for(d);
  };
}

}  // namespace tbench

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


#include "core/rng.hpp"

#include <limits>
#include <string>

#include "core/hash.hpp"

namespace tbench {

std::uint64_t RunRng::below(std::uint64_t bound) {
  // Largest multiple of bound representable; draws at or above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

RunRng new_run_rng(std::uint64_t seed, std::string_view stage_label) {
  const Sha256Digest digest =
      FieldHasher().add(std::to_string(seed)).add(stage_label).digest();
  std::uint64_t s = 0;
  for (int i = 0; i < 8; ++i) s |= static_cast<std::uint64_t>(digest[i]) << (8 * i);
  return RunRng(s);
}

}  // namespace tbench

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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace tbench {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(std::string_view data);
std::string sha256_hex(std::string_view data);
std::string to_hex(const Sha256Digest& digest);

// Hash of a sequence of fields, each length-prefixed so that ("ab","c") and
// ("a","bc") never collide.
class FieldHasher {
 public:
  FieldHasher& add(std::string_view field);
  std::string hex() const;
  Sha256Digest digest() const;

 private:
  std::string buffer_;
};

}  // namespace tbench

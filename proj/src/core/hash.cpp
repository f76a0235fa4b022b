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


#include "core/hash.hpp"

#include <openssl/evp.h>

#include <memory>

#include "core/error.hpp"

namespace tbench {

Sha256Digest sha256(std::string_view data) {
  Sha256Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw Error(ErrorKind::kInternal, "SHA-256 digest failed");
  }
  return out;
}

std::string to_hex(const Sha256Digest& digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(digest.size() * 2);
  for (std::uint8_t b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

std::string sha256_hex(std::string_view data) { return to_hex(sha256(data)); }

FieldHasher& FieldHasher::add(std::string_view field) {
  std::uint64_t n = field.size();
  for (int i = 0; i < 8; ++i) buffer_.push_back(static_cast<char>((n >> (8 * i)) & 0xff));
  buffer_.append(field);
  return *this;
}

Sha256Digest FieldHasher::digest() const { return sha256(buffer_); }

std::string FieldHasher::hex() const { return to_hex(digest()); }

}  // namespace tbench

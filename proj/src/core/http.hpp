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
#include <map>
#include <string>

namespace tbench::http {

struct Response {
  int status = 0;           // 0 when the transport failed
  std::string body;
  std::string transport_error;

  bool transport_failed() const { return status == 0; }
  bool retryable() const { return status == 0 || status == 429 || status >= 500; }
};

using Headers = std::multimap<std::string, std::string>;

// url is absolute: scheme://host[:port]/path[?query]
Response get(const std::string& url, const Headers& headers,
             std::chrono::seconds timeout = std::chrono::seconds(30));
Response post_json(const std::string& url, const Headers& headers, const std::string& body,
                   std::chrono::seconds timeout = std::chrono::seconds(120));

std::string url_encode(const std::string& s);

}  // namespace tbench::http

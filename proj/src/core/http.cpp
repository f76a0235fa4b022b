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


#include "core/http.hpp"

#include <httplib.h>

#include "core/error.hpp"

namespace tbench::http {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // /path?query
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorKind::kValidation, "not an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

httplib::Headers to_headers(const Headers& h) { return httplib::Headers(h.begin(), h.end()); }

template <typename Call>
Response run(const std::string& url, std::chrono::seconds timeout, Call&& call) {
  const SplitUrl parts = split_url(url);
  httplib::Client client(parts.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Result res = call(client, parts.path);
  Response out;
  if (!res) {
    out.transport_error = httplib::to_string(res.error());
    return out;
  }
  out.status = res->status;
  out.body = res->body;
  return out;
}

}  // namespace

Response get(const std::string& url, const Headers& headers, std::chrono::seconds timeout) {
  return run(url, timeout, [&](httplib::Client& c, const std::string& path) {
    return c.Get(path, to_headers(headers));
  });
}

Response post_json(const std::string& url, const Headers& headers, const std::string& body,
                   std::chrono::seconds timeout) {
  return run(url, timeout, [&](httplib::Client& c, const std::string& path) {
    return c.Post(path, to_headers(headers), body, "application/json");
  });
}

std::string url_encode(const std::string& s) {
  return httplib::detail::encode_query_param(s);
}

}  // namespace tbench::http

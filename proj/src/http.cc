// Copyright 2026 The M2T Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "m2t/http.h"

#include <httplib.h>

#include "m2t/error.h"

namespace m2t {

namespace {

void split_url(const std::string &url, std::string *origin, std::string *path) {
  size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorKind::kConfigError, "not an absolute URL: " + url);
  }
  size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) {
    *origin = url;
    *path = "/";
  } else {
    *origin = url.substr(0, slash);
    *path = url.substr(slash);
  }
}

}  // namespace

HttpResponse http_send(const HttpRequest &request) {
  std::string origin, path;
  split_url(request.url, &origin, &path);
  httplib::Client client(origin);
  client.set_connection_timeout(request.timeout_ms / 1000,
                                (request.timeout_ms % 1000) * 1000);
  client.set_read_timeout(request.timeout_ms / 1000,
                          (request.timeout_ms % 1000) * 1000);
  httplib::Headers headers;
  for (const auto &[k, v] : request.headers) headers.emplace(k, v);

  httplib::Result result;
  if (request.method == "GET") {
    result = client.Get(path, headers);
  } else {
    result = client.Post(path, headers, request.body, request.content_type);
  }
  if (!result) {
    throw Error(ErrorKind::kEndpointUnavailable,
                origin + ": " + httplib::to_string(result.error()));
  }
  HttpResponse response;
  response.status = result->status;
  response.body = result->body;
  for (const auto &[k, v] : result->headers) response.headers[k] = v;
  return response;
}

std::string url_encode(const std::string &s) {
  return httplib::detail::encode_query_param(s);
}

}  // namespace m2t

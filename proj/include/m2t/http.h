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

#ifndef M2T_HTTP_H_
#define M2T_HTTP_H_

#include <map>
#include <string>

namespace m2t {

struct HttpRequest {
  std::string method = "POST";
  std::string url;  // scheme://host[:port]/path[?query]
  std::map<std::string, std::string> headers;
  std::string body;
  std::string content_type = "application/json";
  int timeout_ms = 30000;
};

struct HttpResponse {
  int status = 0;
  std::string body;
  std::map<std::string, std::string> headers;
};

// Performs one request. Transport failures (refused connection, timeout)
// throw Error(kEndpointUnavailable); HTTP error statuses are returned.
HttpResponse http_send(const HttpRequest &request);

std::string url_encode(const std::string &s);

}  // namespace m2t

#endif  // M2T_HTTP_H_

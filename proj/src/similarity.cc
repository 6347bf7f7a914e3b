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

#include "m2t/similarity.h"

#include <algorithm>
#include <json.hpp>
#include <map>

#include "m2t/error.h"
#include "m2t/http.h"

namespace m2t {

using nlohmann::json;

namespace {

std::vector<std::string> code_points(std::string_view s) {
  std::vector<std::string> out;
  for (size_t i = 0; i < s.size();) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 1;
    len = std::min(len, s.size() - i);
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') {
      out.emplace_back(s.substr(i, len));
    }
    i += len;
  }
  return out;
}

std::map<std::string, size_t> ngrams(const std::vector<std::string> &chars, size_t n) {
  std::map<std::string, size_t> out;
  for (size_t i = 0; i + n <= chars.size(); ++i) {
    std::string g;
    for (size_t j = 0; j < n; ++j) g += chars[i + j];
    ++out[g];
  }
  return out;
}

}  // namespace

double chrf(std::string_view candidate, std::string_view reference, int max_n,
            double beta) {
  std::vector<std::string> c = code_points(candidate);
  std::vector<std::string> r = code_points(reference);
  double p_sum = 0, r_sum = 0;
  int orders = 0;
  for (int n = 1; n <= max_n; ++n) {
    size_t un = static_cast<size_t>(n);
    if (c.size() < un || r.size() < un) continue;
    auto cg = ngrams(c, un);
    auto rg = ngrams(r, un);
    size_t matches = 0;
    for (const auto &[g, count] : cg) {
      auto it = rg.find(g);
      if (it != rg.end()) matches += std::min(count, it->second);
    }
    p_sum += static_cast<double>(matches) / static_cast<double>(c.size() - un + 1);
    r_sum += static_cast<double>(matches) / static_cast<double>(r.size() - un + 1);
    ++orders;
  }
  if (orders == 0) return 0.0;
  double p = p_sum / orders, rc = r_sum / orders;
  if (p + rc == 0) return 0.0;
  double b2 = beta * beta;
  return (1 + b2) * p * rc / (b2 * p + rc);
}

std::vector<double> ChrfScorer::score(const std::vector<ScorePair> &pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const ScorePair &p : pairs) out.push_back(chrf(p.candidate, p.reference));
  return out;
}

RemoteScorer::RemoteScorer(std::string base_url, int timeout_ms, size_t batch_size)
    : base_url_(std::move(base_url)), timeout_ms_(timeout_ms),
      batch_size_(std::max<size_t>(batch_size, 1)) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

std::string RemoteScorer::id() const {
  return "remote:" + (model_id_.empty() ? base_url_ : model_id_);
}

std::vector<double> RemoteScorer::score(const std::vector<ScorePair> &pairs) {
  std::vector<double> out;
  for (size_t start = 0; start < pairs.size(); start += batch_size_) {
    size_t end = std::min(pairs.size(), start + batch_size_);
    json body = {{"pairs", json::array()}};
    for (size_t i = start; i < end; ++i) {
      body["pairs"].push_back(
          {{"candidate", pairs[i].candidate}, {"reference", pairs[i].reference}});
    }
    HttpRequest req;
    req.url = base_url_ + "/score";
    req.body = body.dump();
    req.timeout_ms = timeout_ms_;
    HttpResponse resp = http_send(req);
    if (resp.status != 200) {
      throw Error(ErrorKind::kBackendError,
                  "scorer returned HTTP " + std::to_string(resp.status) + ": " + resp.body);
    }
    try {
      json j = json::parse(resp.body);
      std::vector<double> scores = j.at("scores").get<std::vector<double>>();
      if (scores.size() != end - start) {
        throw Error(ErrorKind::kBackendError, "scorer returned " +
                                                  std::to_string(scores.size()) +
                                                  " scores for " +
                                                  std::to_string(end - start) + " pairs");
      }
      std::string model = j.value("model_id", "");
      if (!model_id_.empty() && model != model_id_) {
        throw Error(ErrorKind::kBackendError,
                    "scorer model changed from " + model_id_ + " to " + model);
      }
      model_id_ = model;
      out.insert(out.end(), scores.begin(), scores.end());
    } catch (const json::exception &e) {
      throw Error(ErrorKind::kBackendError, std::string("malformed scorer response: ") + e.what());
    }
  }
  return out;
}

}  // namespace m2t

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

#ifndef M2T_SIMILARITY_H_
#define M2T_SIMILARITY_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace m2t {

// Character n-gram F-score (chrF) over UTF-8 code points with whitespace
// removed. Precision and recall are averaged over the orders 1..max_n for
// which both strings have at least one n-gram, then combined with weight
// beta. Scores are comparable only within one scorer.
double chrf(std::string_view candidate, std::string_view reference, int max_n = 6,
            double beta = 2.0);

inline double surface_similarity(std::string_view candidate,
                                 std::string_view reference) {
  return chrf(candidate, reference);
}

struct ScorePair {
  std::string candidate;
  std::string reference;
};

class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string id() const = 0;
  // One score per pair, in order.
  virtual std::vector<double> score(const std::vector<ScorePair> &pairs) = 0;
};

class ChrfScorer : public Scorer {
 public:
  std::string id() const override { return "chrf-n6-b2"; }
  std::vector<double> score(const std::vector<ScorePair> &pairs) override;
};

// Client for POST <base_url>/score with body {"pairs": [{"candidate",
// "reference"}]} answered by {"scores": [...], "model_id": "..."}.
class RemoteScorer : public Scorer {
 public:
  explicit RemoteScorer(std::string base_url, int timeout_ms = 60000,
                        size_t batch_size = 64);

  // "remote:<model_id>" once a response has been seen.
  std::string id() const override;
  std::vector<double> score(const std::vector<ScorePair> &pairs) override;

 private:
  std::string base_url_;
  int timeout_ms_;
  size_t batch_size_;
  std::string model_id_;
};

}  // namespace m2t

#endif  // M2T_SIMILARITY_H_

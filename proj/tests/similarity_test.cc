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

#include <gtest/gtest.h>

#include <atomic>
#include <json.hpp>

#include "m2t/digest.h"
#include "m2t/error.h"
#include "fixture_server.h"
#include "oracles.h"

namespace m2t {
namespace {

using nlohmann::json;

std::string random_text(SplitMix64 &rng, const std::string &alphabet, size_t max_len) {
  std::string s;
  size_t len = rng.below(max_len + 1);
  for (size_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
  return s;
}

TEST(ChrfTest, HandComputedValue) {
  // Orders 1..4 contribute 3/4, 2/3, 1/2 and 0 to both precision and recall.
  EXPECT_NEAR(chrf("abcd", "abce"), 23.0 / 48.0, 1e-12);
  EXPECT_NEAR(testing::chrf_oracle("abcd", "abce"), 23.0 / 48.0, 1e-12);
}

TEST(ChrfTest, Extremes) {
  EXPECT_DOUBLE_EQ(chrf("a cat sat", "a cat sat"), 1.0);
  EXPECT_DOUBLE_EQ(chrf("abc", "xyz"), 0.0);
  EXPECT_DOUBLE_EQ(chrf("", "xyz"), 0.0);
  EXPECT_DOUBLE_EQ(chrf("a b c", "abc"), 1.0);
}

TEST(ChrfTest, MatchesBruteForceOracle) {
  SplitMix64 rng(99);
  for (int i = 0; i < 400; ++i) {
    std::string a = random_text(rng, "abcde ", 14);
    std::string b = random_text(rng, "abcde ", 14);
    ASSERT_NEAR(chrf(a, b), testing::chrf_oracle(a, b), 1e-12) << a << " | " << b;
    ASSERT_NEAR(chrf(a, b, 3, 1.0), testing::chrf_oracle(a, b, 3, 1.0), 1e-12);
  }
}

TEST(ChrfTest, IdentityUnderSharedSuffix) {
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::string a = random_text(rng, "xyz q", 20) + "k";
    std::string suffix = random_text(rng, "mnop", 8);
    EXPECT_NEAR(chrf(a + suffix, a + suffix), 1.0, 1e-9);
  }
}

TEST(ChrfTest, CountsUtf8CodePoints) {
  EXPECT_DOUBLE_EQ(chrf("café", "café"), 1.0);
  EXPECT_GT(chrf("café", "cafe"), 0.0);
  EXPECT_LT(chrf("café", "cafe"), 1.0);
}

TEST(ChrfScorerTest, ScoresInOrder) {
  ChrfScorer scorer;
  auto s = scorer.score({{"abcd", "abce"}, {"x", "x"}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0], 23.0 / 48.0, 1e-12);
  EXPECT_EQ(s[1], 1.0);
  EXPECT_EQ(scorer.id(), "chrf-n6-b2");
}

class RemoteScorerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.server().Post("/score", [this](const httplib::Request &req, httplib::Response &res) {
      ++batches_;
      json body = json::parse(req.body);
      if (mode_ == "short") {
        res.set_content(R"({"scores": [], "model_id": "m"})", "application/json");
        return;
      }
      if (mode_ == "error") {
        res.status = 500;
        return;
      }
      json scores = json::array();
      for (const json &p : body.at("pairs")) {
        scores.push_back(chrf(p.at("candidate").get<std::string>(),
                              p.at("reference").get<std::string>()));
      }
      res.set_content(json{{"scores", scores}, {"model_id", "fixture-model"}}.dump(),
                      "application/json");
    });
    server_.start();
  }
  void TearDown() override { server_.stop(); }

  std::atomic<int> batches_{0};
  std::string mode_;
  testing::FixtureServer server_;
};

TEST_F(RemoteScorerTest, BatchesAndKeepsOrder) {
  RemoteScorer scorer(server_.url("/"), 5000, 3);
  std::vector<ScorePair> pairs;
  SplitMix64 rng(1);
  for (int i = 0; i < 7; ++i) {
    pairs.push_back({random_text(rng, "abc ", 10) + "a", random_text(rng, "abc ", 10) + "b"});
  }
  std::vector<double> got = scorer.score(pairs);
  ASSERT_EQ(got.size(), 7u);
  for (size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_DOUBLE_EQ(got[i], chrf(pairs[i].candidate, pairs[i].reference));
  }
  EXPECT_EQ(batches_, 3);
  EXPECT_EQ(scorer.id(), "remote:fixture-model");
  EXPECT_EQ(scorer.score(pairs), got);
}

TEST_F(RemoteScorerTest, RejectsMisalignedAndFailedResponses) {
  RemoteScorer scorer(server_.url());
  mode_ = "short";
  EXPECT_THROW(scorer.score({{"a", "b"}}), Error);
  mode_ = "error";
  EXPECT_THROW(scorer.score({{"a", "b"}}), Error);
  EXPECT_TRUE(scorer.score({}).empty());
}

}  // namespace
}  // namespace m2t

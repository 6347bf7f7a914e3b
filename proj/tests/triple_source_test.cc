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

#include "m2t/triple_source.h"

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <set>

#include "fixture_server.h"
#include "m2t/error.h"
#include "m2t/schema.h"
#include "m2t/text.h"
#include "test_support.h"

namespace m2t {
namespace {

const char *kResults = R"({"head":{"vars":["s","sLabel","o","oLabel"]},"results":{"bindings":[
 {"s":{"type":"uri","value":"http://www.wikidata.org/entity/Q1"},"sLabel":{"type":"literal","value":"Scream"},
  "o":{"type":"uri","value":"http://www.wikidata.org/entity/Q2"},"oLabel":{"type":"literal","value":"Liev Schreiber"}},
 {"s":{"type":"uri","value":"http://www.wikidata.org/entity/Q3"},"sLabel":{"type":"literal","value":"Cotton Fields"},
  "o":{"type":"literal","datatype":"http://www.w3.org/2001/XMLSchema#dateTime","value":"1970-01-01T00:00:00Z"}},
 {"s":{"type":"uri","value":"http://www.wikidata.org/entity/Q4"}}
]}})";

TEST(SparqlResultsTest, ParsesLabelsIdsAndYears) {
  std::vector<Triple> t = parse_sparql_results(kResults, "cast member");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].subject, "Scream");
  EXPECT_EQ(t[0].object, "Liev Schreiber");
  EXPECT_EQ(t[0].subject_id.value_or(""), "Q1");
  EXPECT_EQ(t[0].object_id.value_or(""), "Q2");
  EXPECT_EQ(t[1].object, "1970");
  EXPECT_THROW(parse_sparql_results("not json", "x"), Error);
  EXPECT_THROW(parse_sparql_results("{}", "x"), Error);
}

TEST(FixtureSourceTest, DeterministicDistinctTriples) {
  FixtureTripleSource src = FixtureTripleSource::load_default();
  EXPECT_TRUE(src.knows("movies", "cast member"));
  std::vector<Triple> a = src.triples("movies", "cast member", 50);
  std::vector<Triple> b = src.triples("movies", "cast member", 50);
  ASSERT_EQ(a.size(), 50u);
  EXPECT_EQ(a, b);
  std::set<std::pair<std::string, std::string>> seen;
  for (const Triple &t : a) {
    EXPECT_NE(t.subject, t.object);
    EXPECT_TRUE(seen.insert({t.subject, t.object}).second);
  }
  Triple anchor{"Starship", "song", "x", {}, {}};
  std::vector<Triple> about = src.triples_about("music", anchor, "song", 3);
  ASSERT_EQ(about.size(), 3u);
  for (const Triple &t : about) EXPECT_EQ(t.subject, "Starship");
  EXPECT_THROW(src.triples("movies", "no such relation", 1), Error);
  EXPECT_EQ(src.provenance(), "fixture:kg_pools.json");
}

TEST(FetchTriplesTest, FixtureEndpointAndUnmappedRelation) {
  MrSchema schema = MrSchema::load_default();
  std::vector<Triple> t = fetch_triples("record label", 5, "fixture:", schema);
  EXPECT_EQ(t.size(), 5u);
  try {
    fetch_triples("favourite colour", 5, "fixture:", schema);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnmappedRelation);
  }
}

class SparqlSourceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.server().Get("/sparql", [this](const httplib::Request &req, httplib::Response &res) {
      int now = ++in_flight_;
      int prev = peak_.load();
      while (now > prev && !peak_.compare_exchange_weak(prev, now)) {
      }
      ++hits_;
      last_query_ = req.get_param_value("query");
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_));
      --in_flight_;
      if (fail_) {
        res.status = 503;
        return;
      }
      res.set_content(kResults, "application/sparql-results+json");
    });
    server_.start();
  }
  void TearDown() override { server_.stop(); }

  SparqlOptions options(const std::string &day) {
    SparqlOptions o;
    o.endpoint = server_.url("/sparql");
    o.cache_dir = dir_.file("cache");
    o.today = [day] { return day; };
    return o;
  }

  testing::FixtureServer server_;
  testing::TempDir dir_;
  std::atomic<int> hits_{0}, in_flight_{0}, peak_{0};
  std::atomic<bool> fail_{false};
  int delay_ms_ = 0;
  std::string last_query_;
  MrSchema schema_ = MrSchema::load_default();
};

TEST_F(SparqlSourceTest, CachesPerDay) {
  SparqlTripleSource src(schema_, options("2026-01-01"));
  auto a = src.triples("movies", "cast member", 10);
  auto b = src.triples("movies", "cast member", 10);
  EXPECT_EQ(a, b);
  EXPECT_EQ(hits_.load(), 1);
  EXPECT_EQ(src.requests_sent(), 1u);
  EXPECT_NE(last_query_.find("wdt:P161"), std::string::npos);
  EXPECT_NE(last_query_.find("LIMIT 10"), std::string::npos);
  SparqlTripleSource next_day(schema_, options("2026-01-02"));
  next_day.triples("movies", "cast member", 10);
  EXPECT_EQ(hits_.load(), 2);
}

TEST_F(SparqlSourceTest, InverseRelationAndAnchoredQuery) {
  SparqlTripleSource src(schema_, options("2026-01-01"));
  src.triples("music", "song", 4);
  EXPECT_NE(last_query_.find("?o wdt:P175 ?s"), std::string::npos);
  Triple anchor{"Starship", "song", "x", std::string("Q42"), {}};
  src.triples_about("music", anchor, "song", 4);
  EXPECT_NE(last_query_.find("VALUES ?s { wd:Q42 }"), std::string::npos);
  Triple by_label{"Rock \"n\" Roll", "song", "x", {}, {}};
  src.triples_about("music", by_label, "song", 4);
  EXPECT_NE(last_query_.find("rdfs:label \"Rock \\\"n\\\" Roll\"@en"), std::string::npos);
}

TEST_F(SparqlSourceTest, FallsBackToLatestCacheWhenUnavailable) {
  {
    SparqlTripleSource src(schema_, options("2026-01-01"));
    src.triples("movies", "cast member", 10);
  }
  fail_ = true;
  SparqlTripleSource later(schema_, options("2026-03-01"));
  auto t = later.triples("movies", "cast member", 10);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(hits_.load(), 2);
  try {
    later.triples("movies", "genre", 10);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEndpointUnavailable);
  }
}

TEST_F(SparqlSourceTest, FetchManyBoundsParallelism) {
  delay_ms_ = 40;
  SparqlOptions o = options("2026-01-01");
  o.max_parallel = 2;
  SparqlTripleSource src(schema_, o);
  std::vector<SparqlTripleSource::Request> reqs;
  for (size_t i = 1; i <= 6; ++i) reqs.push_back({"movies", "cast member", i});
  auto out = src.fetch_many(reqs);
  ASSERT_EQ(out.size(), 6u);
  for (const auto &r : out) EXPECT_EQ(r.size(), 2u);
  EXPECT_LE(peak_.load(), 2);
  EXPECT_EQ(hits_.load(), 6);
}

TEST(SparqlUnreachableTest, NoServerNoCache) {
  testing::TempDir dir;
  MrSchema schema = MrSchema::load_default();
  SparqlOptions o;
  o.endpoint = "http://127.0.0.1:9/sparql";
  o.cache_dir = dir.file("c");
  o.timeout_ms = 500;
  SparqlTripleSource src(schema, o);
  try {
    src.triples("movies", "cast member", 1);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEndpointUnavailable);
  }
}

}  // namespace
}  // namespace m2t

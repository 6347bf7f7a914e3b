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

#ifndef M2T_TRIPLE_SOURCE_H_
#define M2T_TRIPLE_SOURCE_H_

#include <atomic>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "m2t/mr.h"
#include "m2t/schema.h"

namespace m2t {

// Where KG triples come from. Implementations: the offline fixture pools and
// a cached SPARQL client.
class TripleSource {
 public:
  virtual ~TripleSource() = default;

  // Up to `limit` triples of `relation` within `topic`.
  virtual std::vector<Triple> triples(const std::string &topic,
                                      const std::string &relation,
                                      size_t limit) = 0;

  // Up to `limit` triples (subject, relation, ?) for a given subject.
  virtual std::vector<Triple> triples_about(const std::string &topic,
                                            const Triple &anchor_subject,
                                            const std::string &relation,
                                            size_t limit) = 0;

  virtual std::string provenance() const = 0;
};

// Deterministic synthetic KG built from the word lists in
// data/fixtures/kg_pools.json. Names are products of the lists, so the pool
// is large enough for full-size corpora without shipping megabytes of data.
class FixtureTripleSource : public TripleSource {
 public:
  static FixtureTripleSource load(const std::string &path);
  static FixtureTripleSource load_default();

  std::vector<Triple> triples(const std::string &topic,
                              const std::string &relation,
                              size_t limit) override;
  std::vector<Triple> triples_about(const std::string &topic,
                                    const Triple &anchor_subject,
                                    const std::string &relation,
                                    size_t limit) override;
  std::string provenance() const override;

  bool knows(const std::string &topic, const std::string &relation) const;
  const std::vector<std::string> &entities(const std::string &type) const;

 private:
  std::string path_;
  std::map<std::string, std::vector<std::string>> types_;
  // topic -> relation -> (subject type, object type)
  std::map<std::string, std::map<std::string, std::pair<std::string, std::string>>>
      relations_;
};

struct SparqlOptions {
  std::string endpoint;    // e.g. https://query.wikidata.org/sparql
  std::string cache_dir;   // on-disk result cache
  size_t max_parallel = 4;
  std::string user_agent = "m2t-toolkit/1.0";
  int timeout_ms = 30000;
  // Date component of the cache key; defaults to today's UTC date.
  std::function<std::string()> today;
};

// WikiData-style SPARQL client. Results are cached per (relation, limit,
// endpoint, date[, subject]); a failed request falls back to the most recent
// cache entry for the same query.
class SparqlTripleSource : public TripleSource {
 public:
  SparqlTripleSource(const MrSchema &schema, SparqlOptions options);

  std::vector<Triple> triples(const std::string &topic,
                              const std::string &relation,
                              size_t limit) override;
  std::vector<Triple> triples_about(const std::string &topic,
                                    const Triple &anchor_subject,
                                    const std::string &relation,
                                    size_t limit) override;
  std::string provenance() const override { return "sparql:" + options_.endpoint; }

  struct Request {
    std::string topic;
    std::string relation;
    size_t limit = 0;
  };
  // Runs requests with at most options.max_parallel in flight. Results are
  // returned in request order.
  std::vector<std::vector<Triple>> fetch_many(const std::vector<Request> &requests);

  // Number of HTTP requests issued (cache hits excluded).
  size_t requests_sent() const { return requests_sent_; }

 private:
  std::vector<Triple> run_cached(const std::string &cache_stem,
                                 const std::string &query,
                                 const std::string &relation);
  const RelationSpec &mapped(const std::string &topic,
                             const std::string &relation) const;

  const MrSchema &schema_;
  SparqlOptions options_;
  std::atomic<size_t> requests_sent_{0};
};

// Convenience entry point. `endpoint` is either "fixture:" (optionally
// followed by a pools file path) or an HTTP(S) SPARQL URL. Throws
// UnmappedRelation when the schema has no property ID for the relation, and
// EndpointUnavailable when the endpoint fails and nothing is cached.
std::vector<Triple> fetch_triples(const std::string &relation, size_t limit,
                                  const std::string &endpoint,
                                  const MrSchema &schema,
                                  const std::string &cache_dir = "",
                                  const std::string &topic = "");

// Parses an application/sparql-results+json body with ?s ?sLabel ?o ?oLabel
// bindings.
std::vector<Triple> parse_sparql_results(const std::string &body,
                                         const std::string &relation);

}  // namespace m2t

#endif  // M2T_TRIPLE_SOURCE_H_

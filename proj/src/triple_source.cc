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

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <future>
#include <json.hpp>
#include <semaphore>

#include "m2t/digest.h"
#include "m2t/error.h"
#include "m2t/http.h"
#include "m2t/text.h"

namespace m2t {

using nlohmann::json;

namespace {

std::string utc_today() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[16];
  std::strftime(buf, sizeof(buf), "%Y-%m-%d", &tm);
  return buf;
}

json triples_to_json(const std::vector<Triple> &triples) {
  json arr = json::array();
  for (const Triple &t : triples) {
    json j = {{"s", t.subject}, {"r", t.relation}, {"o", t.object}};
    if (t.subject_id) j["sid"] = *t.subject_id;
    if (t.object_id) j["oid"] = *t.object_id;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<Triple> triples_from_json(const json &arr) {
  std::vector<Triple> out;
  for (const auto &j : arr) {
    Triple t{j.at("s").get<std::string>(), j.at("r").get<std::string>(),
             j.at("o").get<std::string>(), {}, {}};
    if (j.contains("sid")) t.subject_id = j.at("sid").get<std::string>();
    if (j.contains("oid")) t.object_id = j.at("oid").get<std::string>();
    out.push_back(std::move(t));
  }
  return out;
}

std::string entity_id(const std::string &uri) {
  const std::string prefix = "http://www.wikidata.org/entity/";
  if (starts_with(uri, prefix)) return uri.substr(prefix.size());
  return "";
}

std::string sparql_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fixture pools.

FixtureTripleSource FixtureTripleSource::load(const std::string &path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kConfigError, std::string("kg pools: ") + e.what());
  }
  FixtureTripleSource src;
  src.path_ = path;
  for (const auto &[type, spec] : doc.at("types").items()) {
    std::vector<std::string> names;
    for (const auto &lit : spec.value("literals", json::array())) {
      names.push_back(lit.get<std::string>());
    }
    if (spec.contains("product")) {
      std::vector<std::string> acc = {""};
      for (const auto &part : spec.at("product")) {
        std::vector<std::string> next;
        for (const auto &prefix : acc) {
          for (const auto &word : part) {
            next.push_back(prefix.empty() ? word.get<std::string>()
                                          : prefix + " " + word.get<std::string>());
          }
        }
        acc = std::move(next);
      }
      for (auto &n : acc) {
        if (std::find(names.begin(), names.end(), n) == names.end()) {
          names.push_back(std::move(n));
        }
      }
    }
    if (spec.contains("range")) {
      int lo = spec.at("range")[0].get<int>();
      int hi = spec.at("range")[1].get<int>();
      for (int v = lo; v <= hi; ++v) names.push_back(std::to_string(v));
    }
    if (names.empty()) {
      throw Error(ErrorKind::kConfigError, "kg pools: empty type " + type);
    }
    src.types_[type] = std::move(names);
  }
  for (const auto &[topic, rels] : doc.at("relations").items()) {
    for (const auto &[rel, types] : rels.items()) {
      std::string st = types[0].get<std::string>();
      std::string ot = types[1].get<std::string>();
      if (!src.types_.count(st) || !src.types_.count(ot)) {
        throw Error(ErrorKind::kConfigError, "kg pools: unknown type for " + rel);
      }
      src.relations_[topic][rel] = {st, ot};
    }
  }
  return src;
}

FixtureTripleSource FixtureTripleSource::load_default() {
  return load(data_path("fixtures/kg_pools.json"));
}

std::string FixtureTripleSource::provenance() const {
  return "fixture:" + std::filesystem::path(path_).filename().string();
}

bool FixtureTripleSource::knows(const std::string &topic,
                                const std::string &relation) const {
  auto it = relations_.find(topic);
  return it != relations_.end() && it->second.count(relation) > 0;
}

const std::vector<std::string> &FixtureTripleSource::entities(
    const std::string &type) const {
  auto it = types_.find(type);
  if (it == types_.end()) throw Error(ErrorKind::kConfigError, "unknown type " + type);
  return it->second;
}

std::vector<Triple> FixtureTripleSource::triples(const std::string &topic,
                                                 const std::string &relation,
                                                 size_t limit) {
  if (!knows(topic, relation)) {
    throw Error(ErrorKind::kUnmappedRelation, topic + "/" + relation);
  }
  const auto &[st, ot] = relations_.at(topic).at(relation);
  const auto &subjects = types_.at(st);
  const auto &objects = types_.at(ot);
  std::vector<Triple> out;
  size_t capacity = subjects.size() * objects.size();
  // Triple n pairs subject n mod S with the (n / S)-th object in that
  // subject's own rotation of the object list.
  for (size_t n = 0; n < capacity && out.size() < limit; ++n) {
    const std::string &subject = subjects[n % subjects.size()];
    size_t round = n / subjects.size();
    size_t base = stable_hash(subject + "\x1f" + relation) % objects.size();
    const std::string &object = objects[(base + round) % objects.size()];
    if (object == subject) continue;
    out.push_back({subject, relation, object, {}, {}});
  }
  return out;
}

std::vector<Triple> FixtureTripleSource::triples_about(
    const std::string &topic, const Triple &anchor, const std::string &relation,
    size_t limit) {
  if (!knows(topic, relation)) {
    throw Error(ErrorKind::kUnmappedRelation, topic + "/" + relation);
  }
  const auto &objects = types_.at(relations_.at(topic).at(relation).second);
  const std::string &subject = anchor.subject;
  size_t base = stable_hash(subject + "\x1f" + relation) % objects.size();
  std::vector<Triple> out;
  for (size_t j = 0; j < objects.size() && out.size() < limit; ++j) {
    const std::string &object = objects[(base + j) % objects.size()];
    if (object == subject) continue;
    out.push_back({subject, relation, object, anchor.subject_id, {}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// SPARQL.

std::vector<Triple> parse_sparql_results(const std::string &body,
                                         const std::string &relation) {
  std::vector<Triple> out;
  try {
    json doc = json::parse(body);
    for (const auto &b : doc.at("results").at("bindings")) {
      auto label_of = [&](const char *var, const char *label_var,
                          std::optional<std::string> *id) -> std::string {
        if (b.contains(label_var)) {
          if (b.contains(var)) {
            std::string qid = entity_id(b.at(var).value("value", ""));
            if (!qid.empty()) *id = qid;
          }
          return b.at(label_var).value("value", "");
        }
        if (!b.contains(var)) return "";
        const auto &v = b.at(var);
        std::string value = v.value("value", "");
        std::string qid = entity_id(value);
        if (!qid.empty()) *id = qid;
        if (ends_with(v.value("datatype", ""), "#dateTime") && value.size() >= 4) {
          return value.substr(0, 4);
        }
        return value;
      };
      Triple t;
      t.relation = relation;
      t.subject = label_of("s", "sLabel", &t.subject_id);
      t.object = label_of("o", "oLabel", &t.object_id);
      if (trim(t.subject).empty() || trim(t.object).empty()) continue;
      out.push_back(std::move(t));
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kEndpointUnavailable,
                std::string("malformed SPARQL response: ") + e.what());
  }
  return out;
}

SparqlTripleSource::SparqlTripleSource(const MrSchema &schema,
                                       SparqlOptions options)
    : schema_(schema), options_(std::move(options)) {
  if (!options_.today) options_.today = utc_today;
}

const RelationSpec &SparqlTripleSource::mapped(const std::string &topic,
                                               const std::string &relation) const {
  const RelationSpec *spec = topic.empty() ? schema_.find_relation(relation)
                                           : schema_.relation(topic, relation);
  if (spec == nullptr || !spec->property_id) {
    throw Error(ErrorKind::kUnmappedRelation, relation);
  }
  return *spec;
}

std::vector<Triple> SparqlTripleSource::run_cached(const std::string &cache_stem,
                                                   const std::string &query,
                                                   const std::string &relation) {
  std::string stem_hash = sha256_hex(cache_stem).substr(0, 24);
  std::filesystem::path dir(options_.cache_dir.empty() ? "." : options_.cache_dir);
  std::filesystem::path today_path = dir / (stem_hash + "-" + options_.today() + ".json");
  if (std::filesystem::exists(today_path)) {
    return triples_from_json(json::parse(read_file(today_path.string())).at("triples"));
  }
  try {
    HttpRequest req;
    req.method = "GET";
    req.url = options_.endpoint + "?format=json&query=" + url_encode(query);
    req.headers["Accept"] = "application/sparql-results+json";
    req.headers["User-Agent"] = options_.user_agent;
    req.timeout_ms = options_.timeout_ms;
    ++requests_sent_;
    HttpResponse resp = http_send(req);
    if (resp.status != 200) {
      throw Error(ErrorKind::kEndpointUnavailable,
                  "HTTP " + std::to_string(resp.status) + " from " + options_.endpoint);
    }
    std::vector<Triple> triples = parse_sparql_results(resp.body, relation);
    json cached = {{"stem", cache_stem},
                   {"date", options_.today()},
                   {"triples", triples_to_json(triples)}};
    write_file_atomic(today_path.string(), cached.dump(1) + "\n");
    return triples;
  } catch (const Error &e) {
    if (e.kind() != ErrorKind::kEndpointUnavailable) throw;
    // Fall back to the latest cached result for this query.
    std::string best;
    if (std::filesystem::exists(dir)) {
      for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        std::string name = entry.path().filename().string();
        if (starts_with(name, stem_hash + "-") && ends_with(name, ".json") &&
            name > best) {
          best = name;
        }
      }
    }
    if (best.empty()) throw;
    return triples_from_json(json::parse(read_file((dir / best).string())).at("triples"));
  }
}

std::vector<Triple> SparqlTripleSource::triples(const std::string &topic,
                                                const std::string &relation,
                                                size_t limit) {
  const RelationSpec &spec = mapped(topic, relation);
  std::string edge = spec.inverse ? "?o wdt:" + *spec.property_id + " ?s ."
                                  : "?s wdt:" + *spec.property_id + " ?o .";
  std::string query =
      "SELECT ?s ?sLabel ?o ?oLabel WHERE { " + edge +
      " SERVICE wikibase:label { bd:serviceParam wikibase:language \"en\". } } LIMIT " +
      std::to_string(limit);
  std::string stem = relation + "\x1f" + std::to_string(limit) + "\x1f" + options_.endpoint;
  return run_cached(stem, query, relation);
}

std::vector<Triple> SparqlTripleSource::triples_about(const std::string &topic,
                                                      const Triple &anchor,
                                                      const std::string &relation,
                                                      size_t limit) {
  const RelationSpec &spec = mapped(topic, relation);
  std::string bind = anchor.subject_id
                         ? "VALUES ?s { wd:" + *anchor.subject_id + " } "
                         : "?s rdfs:label \"" + sparql_escape(anchor.subject) + "\"@en . ";
  std::string edge = spec.inverse ? "?o wdt:" + *spec.property_id + " ?s ."
                                  : "?s wdt:" + *spec.property_id + " ?o .";
  std::string query =
      "SELECT ?s ?sLabel ?o ?oLabel WHERE { " + bind + edge +
      " SERVICE wikibase:label { bd:serviceParam wikibase:language \"en\". } } LIMIT " +
      std::to_string(limit);
  std::string stem = relation + "\x1f" + std::to_string(limit) + "\x1f" +
                     options_.endpoint + "\x1f" +
                     anchor.subject_id.value_or(anchor.subject);
  return run_cached(stem, query, relation);
}

std::vector<std::vector<Triple>> SparqlTripleSource::fetch_many(
    const std::vector<Request> &requests) {
  std::counting_semaphore<64> slots(
      static_cast<std::ptrdiff_t>(std::clamp<size_t>(options_.max_parallel, 1, 64)));
  std::vector<std::future<std::vector<Triple>>> futures;
  for (const Request &r : requests) {
    slots.acquire();
    futures.push_back(std::async(std::launch::async, [this, r, &slots] {
      struct Release {
        std::counting_semaphore<64> &s;
        ~Release() { s.release(); }
      } release{slots};
      return triples(r.topic, r.relation, r.limit);
    }));
  }
  std::vector<std::vector<Triple>> out;
  for (auto &f : futures) out.push_back(f.get());
  return out;
}

std::vector<Triple> fetch_triples(const std::string &relation, size_t limit,
                                  const std::string &endpoint,
                                  const MrSchema &schema,
                                  const std::string &cache_dir,
                                  const std::string &topic) {
  const RelationSpec *spec = topic.empty() ? schema.find_relation(relation)
                                           : schema.relation(topic, relation);
  if (spec == nullptr || !spec->property_id) {
    throw Error(ErrorKind::kUnmappedRelation, relation);
  }
  if (starts_with(endpoint, "fixture:")) {
    std::string path = endpoint.substr(8);
    FixtureTripleSource src = path.empty() ? FixtureTripleSource::load_default()
                                           : FixtureTripleSource::load(path);
    std::string t = topic;
    if (t.empty()) {
      for (const std::string &candidate : schema.topics()) {
        if (schema.relation(candidate, relation) && src.knows(candidate, relation)) {
          t = candidate;
          break;
        }
      }
    }
    return src.triples(t, relation, limit);
  }
  SparqlOptions options;
  options.endpoint = endpoint;
  options.cache_dir = cache_dir;
  SparqlTripleSource src(schema, options);
  return src.triples(topic.empty() ? spec->topic : topic, relation, limit);
}

}  // namespace m2t

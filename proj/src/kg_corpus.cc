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

#include "m2t/kg_corpus.h"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <set>

#include "m2t/digest.h"
#include "m2t/error.h"
#include "m2t/mr_format.h"
#include "m2t/text.h"

namespace m2t {

using nlohmann::ordered_json;

namespace {

struct Candidate {
  CorpusRecord record;
  uint64_t rank = 0;
};

// Triple groups for one paraphrase group, in source order.
std::vector<KgMr> enumerate_groups(TripleSource &source, const Template &lead,
                                   size_t limit) {
  std::vector<KgMr> out;
  const auto &sig = lead.relation_signature;
  std::vector<Triple> firsts = source.triples(lead.topic, sig[0], limit);
  for (const Triple &first : firsts) {
    KgMr mr;
    mr.topic = lead.topic;
    mr.triples.push_back(first);
    bool ok = true;
    for (size_t i = 1; i < sig.size() && ok; ++i) {
      Triple anchor;
      const std::string &link = lead.links[i];
      size_t idx = static_cast<size_t>(std::stoul(link.substr(link.find('_') + 1))) - 1;
      const Triple &src = mr.triples[idx];
      bool from_subject = starts_with(link, "subject_");
      anchor.subject = from_subject ? src.subject : src.object;
      anchor.subject_id = from_subject ? src.subject_id : src.object_id;
      ok = false;
      for (const Triple &t : source.triples_about(lead.topic, anchor, sig[i], sig.size() + 1)) {
        bool repeat = false;
        for (const Triple &seen : mr.triples) {
          if (seen.object == t.object) repeat = true;
        }
        if (repeat) continue;
        mr.triples.push_back(t);
        ok = true;
        break;
      }
    }
    if (ok) out.push_back(std::move(mr));
  }
  return out;
}

int split_rank(const std::string &split) {
  if (split == "train") return 0;
  if (split == "dev") return 1;
  return 2;
}

}  // namespace

GeneratedCorpus generate_corpus(TripleSource &source, const TemplateBank &bank,
                                const CorpusSplitConfig &cfg) {
  GeneratedCorpus out;
  out.provenance = source.provenance();
  out.config = cfg;
  std::vector<std::string> categories = bank.corpus_categories();
  if (categories.empty()) {
    throw Error(ErrorKind::kConfigError, "template bank has no corpus categories");
  }
  size_t pooled_target = cfg.train_target + cfg.dev_target;
  size_t per_category = 0;
  if (pooled_target + cfg.test_per_category > 0) {
    size_t share = (pooled_target + categories.size() - 1) / categories.size();
    per_category = cfg.test_per_category + share + share / 10 + 8;
  }

  std::vector<Candidate> pool;
  for (const std::string &category : categories) {
    const Template &lead = *bank.group(category).front();
    CategoryCount count{category, lead.topic, 0, 0, 0, 0};
    std::vector<Candidate> items;
    std::set<std::string> keys;
    if (per_category > 0) {
      for (KgMr &mr : enumerate_groups(source, lead, per_category)) {
        std::string s2s, paren;
        try {
          check_invariants(mr);
          s2s = serialize_kg_s2s(mr);
          paren = serialize_kg_paren(mr);
        } catch (const Error &) {
          continue;  // labels with reserved delimiters
        }
        std::string key = "kg-" + sha256_hex(category + "|" + s2s).substr(0, 16);
        if (!keys.insert(key).second) continue;
        const Template *chosen = nullptr;
        std::string text = realize(mr, bank, stable_hash(key, cfg.seed), &chosen);
        if (chosen->paraphrase_group != category) {
          throw Error(ErrorKind::kConfigError,
                      "category " + category + " is shadowed by " + chosen->paraphrase_group);
        }
        Candidate c;
        c.record.key = key;
        c.record.topic = lead.topic;
        c.record.mr = std::move(mr);
        c.record.reference = std::move(text);
        c.record.template_category = category;
        c.record.template_id = chosen->id;
        c.rank = stable_hash(key + "\x1fsplit", cfg.seed);
        items.push_back(std::move(c));
      }
    }
    count.generated = items.size();
    std::sort(items.begin(), items.end(), [](const Candidate &a, const Candidate &b) {
      return a.rank != b.rank ? a.rank < b.rank : a.record.key < b.record.key;
    });
    if (items.size() < cfg.test_per_category) {
      out.warnings.push_back("InsufficientTriples: category " + category + " has " +
                             std::to_string(items.size()) + " records for a test target of " +
                             std::to_string(cfg.test_per_category));
    }
    for (size_t i = 0; i < items.size(); ++i) {
      if (i < cfg.test_per_category) {
        items[i].record.split = "test";
        out.records.push_back(items[i].record);
      } else {
        pool.push_back(std::move(items[i]));
      }
    }
    out.categories.push_back(count);
  }

  std::sort(pool.begin(), pool.end(), [](const Candidate &a, const Candidate &b) {
    return a.rank != b.rank ? a.rank < b.rank : a.record.key < b.record.key;
  });
  if (pool.size() < pooled_target) {
    out.warnings.push_back("InsufficientTriples: " + std::to_string(pool.size()) +
                           " records for train+dev targets of " +
                           std::to_string(pooled_target));
  }
  for (size_t i = 0; i < pool.size(); ++i) {
    if (i < cfg.dev_target) {
      pool[i].record.split = "dev";
    } else if (i < pooled_target) {
      pool[i].record.split = "train";
    } else {
      ++out.dropped;
      continue;
    }
    out.records.push_back(std::move(pool[i].record));
  }

  std::sort(out.records.begin(), out.records.end(),
            [](const CorpusRecord &a, const CorpusRecord &b) {
              int ra = split_rank(a.split), rb = split_rank(b.split);
              return ra != rb ? ra < rb : a.key < b.key;
            });
  std::map<std::string, CategoryCount *> by_name;
  for (CategoryCount &c : out.categories) by_name[c.category] = &c;
  for (const CorpusRecord &r : out.records) {
    CategoryCount *c = by_name.at(r.template_category);
    if (r.split == "train") ++c->train;
    if (r.split == "dev") ++c->dev;
    if (r.split == "test") ++c->test;
  }
  return out;
}

std::string GeneratedCorpus::corpus_text() const {
  std::string text;
  for (const CorpusRecord &r : records) {
    text += kg_record_json_line(r);
    text += '\n';
  }
  return text;
}

std::string GeneratedCorpus::manifest_text() const {
  ordered_json m;
  m["format"] = "m2t-kg-manifest";
  m["version"] = 1;
  m["seed"] = config.seed;
  m["provenance"] = provenance;
  m["targets"] = {{"train", config.train_target},
                  {"dev", config.dev_target},
                  {"test_per_category", config.test_per_category}};
  size_t train = 0, dev = 0, test = 0;
  ordered_json cats = ordered_json::array();
  for (const CategoryCount &c : categories) {
    cats.push_back({{"category", c.category},
                    {"topic", c.topic},
                    {"generated", c.generated},
                    {"train", c.train},
                    {"dev", c.dev},
                    {"test", c.test}});
    train += c.train;
    dev += c.dev;
    test += c.test;
  }
  m["categories"] = cats;
  m["counts"] = {{"train", train}, {"dev", dev}, {"test", test}};
  m["dropped"] = dropped;
  m["warnings"] = warnings;
  m["corpus_sha256"] = sha256_hex(corpus_text());
  return m.dump(2) + "\n";
}

void write_corpus(const GeneratedCorpus &corpus, const std::string &corpus_path,
                  const std::string &manifest_path) {
  write_file_atomic(corpus_path, corpus.corpus_text());
  write_file_atomic(manifest_path, corpus.manifest_text());
}

}  // namespace m2t

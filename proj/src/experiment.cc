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

#include "m2t/experiment.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <map>
#include <set>
#include <thread>

#include "m2t/corpus.h"
#include "m2t/digest.h"
#include "m2t/error.h"
#include "m2t/lexicon.h"
#include "m2t/metrics.h"
#include "m2t/mr_format.h"
#include "m2t/similarity.h"
#include "m2t/stats.h"
#include "m2t/text.h"

namespace m2t {

using nlohmann::json;
using nlohmann::ordered_json;

std::string ExperimentConfig::to_json_text() const {
  ordered_json j;
  j["topics"] = topics;
  j["k"] = k;
  std::vector<std::string> fmts;
  for (PromptFormat f : formats) fmts.push_back(format_name(f));
  j["formats"] = fmts;
  j["backends"] = backends;
  j["seed"] = seed;
  j["train_per_topic"] = train_per_topic;
  j["test_per_topic"] = test_per_topic;
  j["viggo_mode"] = viggo_mode;
  j["viggo_test_size"] = viggo_test_size;
  j["viggo_ks"] = viggo_ks;
  j["num_candidates"] = num_candidates;
  j["temperature"] = temperature;
  j["max_tokens"] = max_tokens;
  j["scorer"] = scorer_url.empty() ? "local-chrf" : scorer_url;
  j["qa_markers"] = {{"prompt", markers.prompt},
                     {"sentence", markers.sentence},
                     {"trailing_space", markers.trailing_space}};
  return j.dump();
}

namespace {

struct Job {
  CompletionClient *client = nullptr;
  std::string prompt;
  CompletionParams params;
  const CorpusRecord *record = nullptr;  // test record (matrix, viggo)
  MeaningRepresentation mr;
  std::string mr_text;
  std::string source_key;
  std::string backend, format, train_topic, test_topic, dialogue_act;
  size_t k = 0;
};

struct Outcome {
  std::optional<GenerationRecord> record;
  std::string error;
};

class Backends {
 public:
  explicit Backends(const ExperimentConfig &cfg) {
    if (!cfg.store_path.empty()) store_ = std::make_unique<GenerationStore>(cfg.store_path);
    for (const std::string &id : cfg.backends) {
      clients_[id] = std::make_unique<CompletionClient>(
          make_backend(id, cfg.backend_registry), store_.get(), cfg.client);
    }
  }
  CompletionClient *get(const std::string &id) { return clients_.at(id).get(); }

 private:
  std::unique_ptr<GenerationStore> store_;
  std::map<std::string, std::unique_ptr<CompletionClient>> clients_;
};

std::unique_ptr<Scorer> make_scorer(const ExperimentConfig &cfg) {
  if (cfg.scorer_url.empty()) return std::make_unique<ChrfScorer>();
  return std::make_unique<RemoteScorer>(cfg.scorer_url);
}

CompletionParams params_for(const ExperimentConfig &cfg, const PromptBundle &bundle) {
  CompletionParams p;
  p.temperature = cfg.temperature;
  p.max_tokens = cfg.max_tokens;
  p.stop_sequences = bundle.stop_sequences;
  p.num_candidates = cfg.num_candidates;
  return p;
}

std::vector<Outcome> execute(const std::vector<Job> &jobs, size_t parallelism) {
  std::vector<Outcome> out(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      const Job &j = jobs[i];
      try {
        out[i].record = j.client->complete(j.prompt, j.params, j.mr_text, j.test_topic);
      } catch (const Error &e) {
        switch (e.kind()) {
          case ErrorKind::kBackendError:
          case ErrorKind::kEndpointUnavailable:
          case ErrorKind::kBudgetExceeded:
          case ErrorKind::kUnparsableTestMr:
            out[i].error = e.what();
            break;
          default:
            throw;
        }
      }
    }
  };
  size_t n = std::max<size_t>(1, std::min(parallelism, jobs.size()));
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(n);
  for (size_t t = 0; t < n; ++t) {
    threads.emplace_back([&, t] {
      try {
        worker();
      } catch (...) {
        errors[t] = std::current_exception();
        next = jobs.size();
      }
    });
  }
  for (auto &t : threads) t.join();
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Scores every candidate; surface similarity only when `reference` is set.
std::vector<ItemScore> score_outcomes(const std::vector<Job> &jobs,
                                      const std::vector<Outcome> &outcomes,
                                      const Lexicon &lexicon, Scorer *scorer,
                                      std::vector<std::string> *failures) {
  std::vector<ItemScore> items;
  std::vector<ScorePair> pairs;
  std::vector<size_t> pair_items;
  for (size_t i = 0; i < jobs.size(); ++i) {
    const Job &job = jobs[i];
    if (!outcomes[i].record) {
      failures->push_back(job.source_key + " [" + job.backend + "/" + job.format + "]: " +
                          outcomes[i].error);
      continue;
    }
    const GenerationRecord &g = *outcomes[i].record;
    for (size_t c = 0; c < g.candidates.size(); ++c) {
      const std::string &text = g.candidates[c];
      ItemScore s;
      s.item_key = item_key(g.cache_key, c);
      s.source_key = job.source_key;
      s.backend = job.backend;
      s.format = job.format;
      s.train_topic = job.train_topic;
      s.test_topic = job.test_topic;
      s.dialogue_act = job.dialogue_act;
      s.k = job.k;
      AlignmentReport a = semantic_accuracy(job.mr, text, lexicon);
      s.semantic_accuracy = a.ratio;
      s.realized = a.realized;
      s.total = a.total;
      if (!job.dialogue_act.empty()) {
        s.da_verdict = verdict_name(dialogue_act_match(job.dialogue_act, text));
      }
      s.question_added = question_added(job.mr, text);
      s.words = word_count(text);
      if (scorer != nullptr && job.record != nullptr) {
        pairs.push_back({text.empty() ? std::string(" ") : text, job.record->reference});
        pair_items.push_back(items.size());
      }
      items.push_back(std::move(s));
    }
  }
  if (scorer != nullptr && !pairs.empty()) {
    std::vector<double> scores = scorer->score(pairs);
    for (size_t i = 0; i < scores.size(); ++i) items[pair_items[i]].surface = scores[i];
  }
  return items;
}

ordered_json item_json(const ItemScore &s) {
  ordered_json j;
  j["item_key"] = s.item_key;
  j["source_key"] = s.source_key;
  j["backend"] = s.backend;
  j["format"] = s.format;
  if (!s.train_topic.empty()) j["train_topic"] = s.train_topic;
  j["test_topic"] = s.test_topic;
  if (!s.dialogue_act.empty()) j["dialogue_act"] = s.dialogue_act;
  j["k"] = s.k;
  if (s.surface) j["surface"] = *s.surface;
  j["semantic_accuracy"] = s.semantic_accuracy;
  j["realized"] = s.realized;
  j["total"] = s.total;
  if (!s.da_verdict.empty()) j["da_verdict"] = s.da_verdict;
  j["question_added"] = s.question_added;
  j["words"] = s.words;
  return j;
}

std::string file_digest(const std::string &path) { return sha256_hex(read_file(path)); }

std::optional<double> mean_of(const std::vector<double> &v) {
  if (v.empty()) return std::nullopt;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

ReportCell opt_cell(const std::optional<double> &v, bool marked = false) {
  return v ? ReportCell::number(*v, marked) : ReportCell::gap();
}

void sort_items(std::vector<ItemScore> &items) {
  std::sort(items.begin(), items.end(), [](const ItemScore &a, const ItemScore &b) {
    return std::tie(a.backend, a.format, a.k, a.train_topic, a.test_topic, a.source_key,
                    a.item_key) < std::tie(b.backend, b.format, b.k, b.train_topic,
                                           b.test_topic, b.source_key, b.item_key);
  });
}

// Records of `split` and `topic`, ordered by a seeded hash of their keys.
std::vector<const CorpusRecord *> seeded_order(const std::vector<CorpusRecord> &corpus,
                                               const std::string &split,
                                               const std::string &topic, uint64_t seed) {
  std::vector<std::pair<uint64_t, const CorpusRecord *>> ranked;
  for (const CorpusRecord &r : corpus) {
    if (r.split != split || (!topic.empty() && r.topic != topic)) continue;
    ranked.emplace_back(stable_hash(r.key, seed), &r);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
    return a.first != b.first ? a.first < b.first : a.second->key < b.second->key;
  });
  std::vector<const CorpusRecord *> out;
  for (const auto &[h, r] : ranked) out.push_back(r);
  return out;
}

// Paired t-test over items shared by two lanes.
struct LaneKey {
  std::string backend, format;
  size_t k = 0;
};

void add_paired_tests(const std::vector<ItemScore> &items, const LaneKey &a,
                      const LaneKey &b, const std::string &label,
                      const std::vector<std::string> &scopes, bool scope_is_train_topic,
                      ReportTable *table, ordered_json *data) {
  for (const char *metric : {"surface", "semantic_accuracy"}) {
    bool surface = std::string(metric) == "surface";
    for (const std::string &scope : scopes) {
      std::map<std::string, double> xa, xb;
      for (const ItemScore &s : items) {
        if (scope != "pooled") {
          const std::string &field = scope_is_train_topic ? s.train_topic : s.test_topic;
          if (field != scope) continue;
        }
        if (surface && !s.surface) continue;
        double v = surface ? *s.surface : s.semantic_accuracy;
        std::string key = s.train_topic + "|" + s.source_key + "|" +
                          s.item_key.substr(s.item_key.rfind(':') + 1);
        if (s.backend == a.backend && s.format == a.format && s.k == a.k) xa[key] = v;
        if (s.backend == b.backend && s.format == b.format && s.k == b.k) xb[key] = v;
      }
      std::vector<double> va, vb;
      for (const auto &[key, v] : xa) {
        auto it = xb.find(key);
        if (it == xb.end()) continue;
        va.push_back(v);
        vb.push_back(it->second);
      }
      std::vector<ReportCell> row = {ReportCell::text(label), ReportCell::text(scope),
                                     ReportCell::text(metric),
                                     ReportCell::count(va.size())};
      ordered_json dj = {{"comparison", label}, {"scope", scope}, {"metric", metric},
                         {"n", va.size()}};
      if (va.size() < 2) {
        row.insert(row.end(), {ReportCell::gap(), ReportCell::gap(), ReportCell::gap(),
                               ReportCell::gap(), ReportCell::text("n < 2")});
        dj["note"] = "n < 2";
      } else {
        StatsResult r = paired_t(va, vb);
        row.push_back(opt_cell(mean_of(va)));
        row.push_back(opt_cell(mean_of(vb)));
        row.push_back(opt_cell(r.t_statistic));
        row.push_back(opt_cell(r.p_value));
        row.push_back(ReportCell::text(r.degenerate ? "DegenerateSample" : ""));
        dj["mean_a"] = *mean_of(va);
        dj["mean_b"] = *mean_of(vb);
        dj["t"] = r.t_statistic ? json(*r.t_statistic) : json(nullptr);
        dj["p"] = r.p_value ? json(*r.p_value) : json(nullptr);
        dj["degenerate"] = r.degenerate;
      }
      table->rows.push_back(std::move(row));
      data->push_back(std::move(dj));
    }
  }
}

ReportTable tests_table() {
  ReportTable t;
  t.name = "paired t-tests";
  t.columns = {"comparison", "scope", "metric", "n", "mean a", "mean b", "t", "p", "note"};
  return t;
}

std::string manifest_digest(const std::string &manifest_text) {
  return sha256_hex(manifest_text);
}

std::vector<Exemplar> load_exemplar_file(const std::string &path) {
  std::vector<Exemplar> out;
  for (const std::string &line : read_lines(path)) {
    if (trim(line).empty() || starts_with(trim(line), "#")) continue;
    std::vector<std::string> f = split(line, "\t");
    if (f.size() != 2) throw Error(ErrorKind::kConfigError, path + ": expected mr<TAB>reference");
    out.push_back({"", trim_copy(f[0]), trim_copy(f[1])});
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

RunOutput run_matrix(const ExperimentConfig &cfg) {
  std::string corpus_path = cfg.kg_corpus.empty() ? data_path("kg/corpus.jsonl") : cfg.kg_corpus;
  std::vector<CorpusRecord> corpus = load_kg_corpus(corpus_path);
  if (cfg.k > cfg.train_per_topic) {
    throw Error(ErrorKind::kConfigError, "k exceeds train_per_topic");
  }
  Lexicon lexicon = Lexicon::load_default();
  Backends backends(cfg);
  std::unique_ptr<Scorer> scorer = make_scorer(cfg);

  ordered_json manifest;
  manifest["kind"] = "matrix";
  manifest["config"] = ordered_json::parse(cfg.to_json_text());
  manifest["corpus_sha256"] = file_digest(corpus_path);
  manifest["scorer"] = scorer->id();

  // Test items per topic.
  std::map<std::string, std::vector<const CorpusRecord *>> tests;
  ordered_json test_keys = ordered_json::object();
  std::vector<std::string> all_test_keys;
  for (const std::string &topic : cfg.topics) {
    std::vector<const CorpusRecord *> ordered = seeded_order(corpus, "test", topic, cfg.seed);
    if (ordered.size() < cfg.test_per_topic) {
      throw Error(ErrorKind::kInsufficientCorpus,
                  topic + " has " + std::to_string(ordered.size()) + " test records for " +
                      std::to_string(cfg.test_per_topic));
    }
    ordered.resize(cfg.test_per_topic);
    std::sort(ordered.begin(), ordered.end(),
              [](const CorpusRecord *a, const CorpusRecord *b) { return a->key < b->key; });
    std::vector<std::string> keys;
    for (const CorpusRecord *r : ordered) {
      keys.push_back(r->key);
      all_test_keys.push_back(r->key);
    }
    test_keys[topic] = keys;
    tests[topic] = std::move(ordered);
  }
  manifest["test_keys"] = test_keys;

  // Exemplars per train topic.
  std::map<std::string, std::vector<Exemplar>> exemplars;
  ordered_json sampling = ordered_json::object();
  for (const std::string &topic : cfg.topics) {
    std::vector<CorpusRecord> pool;
    for (const CorpusRecord &r : corpus) {
      if (r.split == "train" && r.topic == topic) pool.push_back(r);
    }
    SamplingLog log;
    std::vector<CorpusRecord> drawn =
        sample_exemplars(pool, cfg.train_per_topic, SamplingStrategy::kUniform,
                         stable_hash(topic, cfg.seed), all_test_keys, &log);
    if (!audit_leakage(log).empty()) {
      throw Error(ErrorKind::kValidationError, "exemplar leakage in " + topic);
    }
    drawn.resize(cfg.k);
    for (const CorpusRecord &r : drawn) exemplars[topic].push_back(exemplar_from(r));
    ordered_json lj = ordered_json::parse(log.to_json_text());
    lj.erase("test_keys");
    lj["pool_keys"] = lj["exemplar_keys"];
    lj["k"] = cfg.k;
    std::vector<std::string> used(log.exemplar_keys.begin(),
                                  log.exemplar_keys.begin() + static_cast<long>(cfg.k));
    lj["exemplar_keys"] = used;
    sampling[topic] = lj;
  }
  manifest["sampling"] = sampling;

  std::vector<Job> jobs;
  for (PromptFormat format : cfg.formats) {
    for (const std::string &backend : cfg.backends) {
      for (const std::string &train : cfg.topics) {
        for (const std::string &test : cfg.topics) {
          for (const CorpusRecord *r : tests[test]) {
            Job j;
            j.client = backends.get(backend);
            j.mr = r->mr;
            j.mr_text = serialize_prompt_mr(r->mr);
            PromptBundle b = build_prompt(format, exemplars[train], j.mr_text, cfg.markers);
            j.prompt = b.rendered;
            j.params = params_for(cfg, b);
            j.record = r;
            j.source_key = r->key;
            j.backend = backend;
            j.format = format_name(format);
            j.train_topic = train;
            j.test_topic = test;
            j.k = cfg.k;
            jobs.push_back(std::move(j));
          }
        }
      }
    }
  }
  std::vector<Outcome> outcomes = execute(jobs, cfg.parallelism);
  std::vector<std::string> failures;
  std::vector<ItemScore> items = score_outcomes(jobs, outcomes, lexicon, scorer.get(), &failures);
  sort_items(items);

  std::string manifest_text = manifest.dump(2) + "\n";
  RunOutput run;
  run.manifest_text = manifest_text;
  Report &rep = run.report;
  rep.kind = "matrix";
  rep.manifest_digest = manifest_digest(manifest_text);
  rep.meta = {{"scorer", scorer->id()},
              {"rows", "train topic"},
              {"columns", "test topic"},
              {"marked", "within-domain cells"},
              {"failed generations", std::to_string(failures.size())}};

  std::vector<std::string> cols = {"train \\ test"};
  for (const std::string &t : cfg.topics) cols.push_back(t);
  cols.push_back("avg");
  for (const char *metric : {"surface similarity", "semantic accuracy"}) {
    bool surface = std::string(metric) == "surface similarity";
    for (const std::string &backend : cfg.backends) {
      for (PromptFormat format : cfg.formats) {
        std::string fname = format_name(format);
        ReportTable t;
        t.name = backend + " " + to_lower_ascii(fname) + " " + metric;
        t.columns = cols;
        std::map<std::string, std::vector<double>> col_vals;
        std::vector<double> all_vals;
        std::vector<std::string> gaps;
        for (const std::string &train : cfg.topics) {
          std::vector<ReportCell> row = {ReportCell::text(train)};
          std::vector<double> row_means;
          for (const std::string &test : cfg.topics) {
            std::vector<double> vals;
            std::set<std::string> seen;
            for (const ItemScore &s : items) {
              if (s.backend != backend || s.format != fname || s.train_topic != train ||
                  s.test_topic != test) {
                continue;
              }
              seen.insert(s.source_key);
              if (surface && !s.surface) continue;
              vals.push_back(surface ? *s.surface : s.semantic_accuracy);
            }
            std::optional<double> m = mean_of(vals);
            if (seen.size() < tests[test].size()) gaps.push_back(train + "/" + test);
            row.push_back(opt_cell(m, train == test));
            if (m) {
              row_means.push_back(*m);
              col_vals[test].push_back(*m);
              all_vals.push_back(*m);
            }
          }
          row.push_back(opt_cell(mean_of(row_means)));
          t.rows.push_back(std::move(row));
        }
        std::vector<ReportCell> avg = {ReportCell::text("avg")};
        for (const std::string &test : cfg.topics) avg.push_back(opt_cell(mean_of(col_vals[test])));
        avg.push_back(opt_cell(mean_of(all_vals)));
        t.rows.push_back(std::move(avg));
        if (!gaps.empty()) t.note = "incomplete cells: " + join(gaps, ", ");
        rep.tables.push_back(std::move(t));
      }
    }
  }

  ReportTable tt = tests_table();
  ordered_json tests_json = ordered_json::array();
  std::vector<std::string> scopes = {"pooled"};
  for (const std::string &t : cfg.topics) scopes.push_back(t);
  for (const std::string &backend : cfg.backends) {
    for (size_t i = 0; i < cfg.formats.size(); ++i) {
      for (size_t j = i + 1; j < cfg.formats.size(); ++j) {
        LaneKey a{backend, format_name(cfg.formats[i]), cfg.k};
        LaneKey b{backend, format_name(cfg.formats[j]), cfg.k};
        add_paired_tests(items, a, b, backend + ": " + a.format + " vs " + b.format, scopes,
                         true, &tt, &tests_json);
      }
    }
  }
  for (PromptFormat format : cfg.formats) {
    for (size_t i = 0; i < cfg.backends.size(); ++i) {
      for (size_t j = i + 1; j < cfg.backends.size(); ++j) {
        LaneKey a{cfg.backends[i], format_name(format), cfg.k};
        LaneKey b{cfg.backends[j], format_name(format), cfg.k};
        add_paired_tests(items, a, b, a.format + ": " + a.backend + " vs " + b.backend,
                         scopes, true, &tt, &tests_json);
      }
    }
  }
  tt.note = "scope is the training topic; pooled pairs every (train topic, test item)";
  rep.tables.push_back(std::move(tt));

  ordered_json items_json = ordered_json::array();
  for (const ItemScore &s : items) items_json.push_back(item_json(s));
  rep.data["items"] = items_json;
  rep.data["tests"] = tests_json;
  rep.data["failures"] = failures;
  run.items = std::move(items);
  return run;
}

// ---------------------------------------------------------------------------

RunOutput run_novel(const ExperimentConfig &cfg, const std::string &novel_mr_file) {
  std::string ex_path = cfg.novel_exemplars.empty()
                            ? data_path("fixtures/novel_exemplars.tsv")
                            : cfg.novel_exemplars;
  std::vector<Exemplar> exemplars = load_exemplar_file(ex_path);
  Lexicon lexicon = Lexicon::load_default();
  Backends backends(cfg);
  PromptFormat format = cfg.formats.empty() ? PromptFormat::kS2S : cfg.formats.front();

  struct Novel {
    std::string id, topic;
    MeaningRepresentation mr;
  };
  std::vector<Novel> mrs;
  for (const std::string &line : read_lines(novel_mr_file)) {
    if (trim(line).empty() || starts_with(trim(line), "#")) continue;
    std::vector<std::string> f = split(line, "\t");
    if (f.size() != 3) {
      throw Error(ErrorKind::kSyntaxError, novel_mr_file + ": expected id<TAB>topic<TAB>mr: " + line);
    }
    Novel n{trim_copy(f[0]), trim_copy(f[1]), {}};
    n.mr = parse_any_mr(trim(f[2]), n.topic);
    mrs.push_back(std::move(n));
  }

  ordered_json manifest;
  manifest["kind"] = "novel";
  manifest["config"] = ordered_json::parse(cfg.to_json_text());
  manifest["format"] = format_name(format);
  manifest["exemplars_sha256"] = file_digest(ex_path);
  manifest["novel_sha256"] = file_digest(novel_mr_file);
  std::vector<std::string> ids;
  for (const Novel &n : mrs) ids.push_back(n.id);
  manifest["novel_ids"] = ids;

  std::vector<Job> jobs;
  for (const std::string &backend : cfg.backends) {
    for (const Novel &n : mrs) {
      Job j;
      j.client = backends.get(backend);
      j.mr = n.mr;
      j.mr_text = serialize_prompt_mr(n.mr);
      PromptBundle b = build_prompt(format, exemplars, j.mr_text, cfg.markers);
      j.prompt = b.rendered;
      j.params = params_for(cfg, b);
      j.source_key = n.id;
      j.backend = backend;
      j.format = format_name(format);
      j.test_topic = n.topic;
      j.k = exemplars.size();
      jobs.push_back(std::move(j));
    }
  }
  std::vector<Outcome> outcomes = execute(jobs, cfg.parallelism);
  std::vector<std::string> failures;
  std::vector<ItemScore> items = score_outcomes(jobs, outcomes, lexicon, nullptr, &failures);
  sort_items(items);

  RunOutput run;
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!outcomes[i].record) continue;
    const GenerationRecord &g = *outcomes[i].record;
    for (size_t c = 0; c < g.candidates.size(); ++c) {
      AnnotationItem it;
      it.item_key = item_key(g.cache_key, c);
      it.model = jobs[i].backend;
      it.topic = jobs[i].test_topic;
      it.mr = jobs[i].mr_text;
      it.text = g.candidates[c];
      it.total = content_unit_count(jobs[i].mr);
      run.package.push_back(std::move(it));
    }
  }
  std::sort(run.package.begin(), run.package.end(),
            [](const AnnotationItem &a, const AnnotationItem &b) {
              return std::tie(a.model, a.topic, a.mr, a.item_key) <
                     std::tie(b.model, b.topic, b.mr, b.item_key);
            });

  run.manifest_text = manifest.dump(2) + "\n";
  Report &rep = run.report;
  rep.kind = "novel";
  rep.manifest_digest = manifest_digest(run.manifest_text);
  rep.meta = {{"format", format_name(format)},
              {"exemplars", std::to_string(exemplars.size())},
              {"package items", std::to_string(run.package.size())},
              {"reference-based scores", "not computed: novel MRs have no references"}};
  ReportTable t;
  t.name = "automatic advisory metrics";
  t.columns = {"model", "items", "semantic accuracy", "question added %", "mean words"};
  for (const std::string &backend : cfg.backends) {
    size_t n = 0, realized = 0, total = 0, q = 0, words = 0;
    for (const ItemScore &s : items) {
      if (s.backend != backend) continue;
      ++n;
      realized += s.realized;
      total += s.total;
      q += s.question_added;
      words += s.words;
    }
    double dn = static_cast<double>(n);
    t.rows.push_back(
        {ReportCell::text(backend), ReportCell::count(n),
         total ? ReportCell::number(static_cast<double>(realized) / static_cast<double>(total))
               : ReportCell::gap(),
         n ? ReportCell::number(100.0 * static_cast<double>(q) / dn) : ReportCell::gap(),
         n ? ReportCell::number(static_cast<double>(words) / dn) : ReportCell::gap()});
  }
  t.note = "human labels for the package are summarized with `m2t report`";
  rep.tables.push_back(std::move(t));
  ordered_json items_json = ordered_json::array();
  for (const ItemScore &s : items) items_json.push_back(item_json(s));
  rep.data["items"] = items_json;
  rep.data["failures"] = failures;
  run.items = std::move(items);
  return run;
}

// ---------------------------------------------------------------------------

RunOutput run_viggo(const ExperimentConfig &cfg) {
  std::string dir = cfg.viggo_corpus.empty() ? data_path("viggo") : cfg.viggo_corpus;
  std::vector<CorpusRecord> corpus = load_viggo_dir(dir);
  Lexicon lexicon = Lexicon::load_default();
  Backends backends(cfg);
  std::unique_ptr<Scorer> scorer = make_scorer(cfg);

  std::vector<CorpusRecord> train = filter_split(corpus, "train");
  std::vector<const CorpusRecord *> tests = seeded_order(corpus, "test", "", cfg.seed);
  std::vector<std::string> meta_notes;
  if (tests.size() < cfg.viggo_test_size) {
    meta_notes.push_back("test split has only " + std::to_string(tests.size()) + " records");
  } else {
    tests.resize(cfg.viggo_test_size);
  }
  std::sort(tests.begin(), tests.end(),
            [](const CorpusRecord *a, const CorpusRecord *b) { return a->key < b->key; });
  std::vector<std::string> test_keys;
  for (const CorpusRecord *r : tests) test_keys.push_back(r->key);

  ordered_json manifest;
  manifest["kind"] = "viggo";
  manifest["config"] = ordered_json::parse(cfg.to_json_text());
  ordered_json digests = ordered_json::object();
  for (const char *f : {"viggo-train.csv", "viggo-valid.csv", "viggo-test.csv"}) {
    std::filesystem::path p = std::filesystem::path(dir) / f;
    if (std::filesystem::exists(p)) digests[f] = file_digest(p.string());
  }
  manifest["corpus_sha256"] = digests;
  manifest["test_keys"] = test_keys;
  manifest["scorer"] = scorer->id();

  std::map<size_t, std::map<std::string, std::vector<Exemplar>>> by_k;
  ordered_json sampling = ordered_json::object();
  for (size_t k : cfg.viggo_ks) {
    SamplingLog log;
    std::vector<CorpusRecord> drawn = sample_exemplars(
        train, k, SamplingStrategy::kPerDialogueAct, stable_hash("viggo", cfg.seed + k),
        test_keys, &log);
    if (!audit_leakage(log).empty()) throw Error(ErrorKind::kValidationError, "exemplar leakage");
    for (const CorpusRecord &r : drawn) by_k[k][r.dialogue_act()].push_back(exemplar_from(r));
    ordered_json lj = ordered_json::parse(log.to_json_text());
    lj.erase("test_keys");
    sampling[std::to_string(k)] = lj;
  }
  manifest["sampling"] = sampling;

  std::vector<Job> jobs;
  for (size_t k : cfg.viggo_ks) {
    for (PromptFormat format : cfg.formats) {
      for (const std::string &backend : cfg.backends) {
        for (const CorpusRecord *r : tests) {
          std::string da = r->dialogue_act();
          auto it = by_k[k].find(da);
          if (it == by_k[k].end()) {
            throw Error(ErrorKind::kInsufficientCorpus, "no training records for " + da);
          }
          Job j;
          j.client = backends.get(backend);
          j.mr = r->mr;
          j.mr_text = serialize_prompt_mr(r->mr);
          PromptBundle b = build_prompt(format, it->second, j.mr_text, cfg.markers);
          j.prompt = b.rendered;
          j.params = params_for(cfg, b);
          j.record = r;
          j.source_key = r->key;
          j.backend = backend;
          j.format = format_name(format);
          j.test_topic = kTopicVideoGames;
          j.dialogue_act = da;
          j.k = k;
          jobs.push_back(std::move(j));
        }
      }
    }
  }
  std::vector<Outcome> outcomes = execute(jobs, cfg.parallelism);
  std::vector<std::string> failures;
  std::vector<ItemScore> items = score_outcomes(jobs, outcomes, lexicon, scorer.get(), &failures);
  sort_items(items);

  RunOutput run;
  run.manifest_text = manifest.dump(2) + "\n";
  Report &rep = run.report;
  rep.kind = "viggo";
  rep.manifest_digest = manifest_digest(run.manifest_text);
  rep.meta = {{"scorer", scorer->id()},
              {"test items", std::to_string(tests.size())},
              {"exemplars", "k per dialogue act"},
              {"failed generations", std::to_string(failures.size())}};
  for (const std::string &n : meta_notes) rep.meta.emplace_back("note", n);

  struct Metric {
    const char *name;
    std::function<std::optional<double>(const ItemScore &)> get;
  };
  std::vector<Metric> metrics = {
      {"surface similarity", [](const ItemScore &s) { return s.surface; }},
      {"semantic accuracy",
       [](const ItemScore &s) { return std::optional<double>(s.semantic_accuracy); }},
      {"dialogue act match %",
       [](const ItemScore &s) {
         return std::optional<double>(s.da_verdict == "match" ? 100.0 : 0.0);
       }},
      {"question added %",
       [](const ItemScore &s) { return std::optional<double>(s.question_added ? 100.0 : 0.0); }},
  };
  std::vector<std::string> cols = {"model / format"};
  for (size_t k : cfg.viggo_ks) cols.push_back(std::to_string(k) + "-shot");
  for (const Metric &m : metrics) {
    ReportTable t;
    t.name = m.name;
    t.columns = cols;
    for (const std::string &backend : cfg.backends) {
      for (PromptFormat format : cfg.formats) {
        std::vector<ReportCell> row = {ReportCell::text(backend + " " + format_name(format))};
        for (size_t k : cfg.viggo_ks) {
          std::vector<double> vals;
          for (const ItemScore &s : items) {
            if (s.backend != backend || s.format != format_name(format) || s.k != k) continue;
            if (auto v = m.get(s)) vals.push_back(*v);
          }
          row.push_back(opt_cell(mean_of(vals)));
        }
        t.rows.push_back(std::move(row));
      }
    }
    rep.tables.push_back(std::move(t));
  }

  // Per dialogue act at the largest k.
  if (!cfg.viggo_ks.empty()) {
    size_t kmax = *std::max_element(cfg.viggo_ks.begin(), cfg.viggo_ks.end());
    ReportTable t;
    t.name = "per dialogue act, " + std::to_string(kmax) + "-shot";
    t.columns = {"dialogue act", "items", "semantic accuracy", "dialogue act match %",
                 "question added %"};
    std::map<std::string, std::vector<const ItemScore *>> by_da;
    for (const ItemScore &s : items) {
      if (s.k == kmax) by_da[s.dialogue_act].push_back(&s);
    }
    for (const auto &[da, group] : by_da) {
      std::vector<double> sa, dm, qa;
      for (const ItemScore *s : group) {
        sa.push_back(s->semantic_accuracy);
        dm.push_back(s->da_verdict == "match" ? 100.0 : 0.0);
        qa.push_back(s->question_added ? 100.0 : 0.0);
      }
      t.rows.push_back({ReportCell::text(da), ReportCell::count(group.size()),
                        opt_cell(mean_of(sa)), opt_cell(mean_of(dm)), opt_cell(mean_of(qa))});
    }
    rep.tables.push_back(std::move(t));
  }

  ReportTable tt = tests_table();
  ordered_json tests_json = ordered_json::array();
  for (const std::string &backend : cfg.backends) {
    for (PromptFormat format : cfg.formats) {
      for (size_t i = 0; i < cfg.viggo_ks.size(); ++i) {
        for (size_t j = i + 1; j < cfg.viggo_ks.size(); ++j) {
          LaneKey a{backend, format_name(format), cfg.viggo_ks[i]};
          LaneKey b{backend, format_name(format), cfg.viggo_ks[j]};
          add_paired_tests(items, a, b,
                           backend + " " + a.format + ": " + std::to_string(a.k) + "-shot vs " +
                               std::to_string(b.k) + "-shot",
                           {"pooled"}, true, &tt, &tests_json);
        }
      }
    }
  }
  rep.tables.push_back(std::move(tt));

  ordered_json items_json = ordered_json::array();
  for (const ItemScore &s : items) items_json.push_back(item_json(s));
  rep.data["items"] = items_json;
  rep.data["tests"] = tests_json;
  rep.data["failures"] = failures;
  run.items = std::move(items);
  return run;
}

// ---------------------------------------------------------------------------

Report correlate(const std::vector<ItemScore> &scores,
                 const std::vector<AnnotationRecord> &annotations,
                 const std::string &manifest_digest) {
  struct Human {
    double sa_sum = 0, coh_sum = 0;
    size_t n = 0;
  };
  std::map<std::string, Human> human;
  for (const AnnotationRecord &r : annotations) {
    validate_record(r);
    Human &h = human[r.item_key];
    h.sa_sum += r.total == 0 ? 1.0 : static_cast<double>(r.realized) / static_cast<double>(r.total);
    h.coh_sum += r.coherence;
    ++h.n;
  }
  struct Joined {
    std::string model;
    double surface, sa, coherence;
  };
  std::vector<Joined> joined;
  std::vector<const ItemScore *> sorted;
  for (const ItemScore &s : scores) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](const ItemScore *a, const ItemScore *b) { return a->item_key < b->item_key; });
  for (const ItemScore *s : sorted) {
    auto it = human.find(s->item_key);
    if (it == human.end() || !s->surface) continue;
    double n = static_cast<double>(it->second.n);
    joined.push_back({s->backend, *s->surface, it->second.sa_sum / n, it->second.coh_sum / n});
  }
  if (joined.empty()) {
    throw Error(ErrorKind::kEmptyGroup, "no scored item joins an annotation");
  }
  Report rep;
  rep.kind = "correlate";
  rep.manifest_digest = manifest_digest;
  rep.meta = {{"joined items", std::to_string(joined.size())}};
  ReportTable t;
  t.name = "pearson r: surface similarity vs human labels";
  t.columns = {"model", "human metric", "n", "r", "p", "note"};
  ordered_json rows = ordered_json::array();
  std::set<std::string> models;
  for (const Joined &j : joined) models.insert(j.model);
  std::vector<std::string> groups(models.begin(), models.end());
  groups.push_back("overall");
  for (const std::string &g : groups) {
    for (const char *metric : {"semantic accuracy", "coherence"}) {
      std::vector<double> xs, ys;
      for (const Joined &j : joined) {
        if (g != "overall" && j.model != g) continue;
        xs.push_back(j.surface);
        ys.push_back(std::string(metric) == "coherence" ? j.coherence : j.sa);
      }
      std::vector<ReportCell> row = {ReportCell::text(g), ReportCell::text(metric),
                                     ReportCell::count(xs.size())};
      ordered_json rj = {{"model", g}, {"metric", metric}, {"n", xs.size()}};
      if (xs.size() < 2) {
        row.insert(row.end(), {ReportCell::gap(), ReportCell::gap(), ReportCell::text("n < 2")});
        rj["note"] = "n < 2";
      } else {
        StatsResult r = pearson(xs, ys);
        row.push_back(opt_cell(r.pearson_r));
        row.push_back(opt_cell(r.p_value));
        row.push_back(ReportCell::text(r.degenerate ? "DegenerateSample" : ""));
        rj["r"] = r.pearson_r ? json(*r.pearson_r) : json(nullptr);
        rj["p"] = r.p_value ? json(*r.p_value) : json(nullptr);
        rj["degenerate"] = r.degenerate;
      }
      t.rows.push_back(std::move(row));
      rows.push_back(std::move(rj));
    }
  }
  rep.tables.push_back(std::move(t));
  rep.data["correlations"] = rows;
  return rep;
}

Report annotation_report(const std::vector<AnnotationRecord> &records,
                         const std::vector<AnnotationItem> &items, GroupBy group_by) {
  std::vector<GroupSummary> groups = aggregate(records, items, group_by);
  Report rep;
  rep.kind = "annotation";
  rep.meta = {{"group by", group_by_name(group_by)}, {"records", std::to_string(records.size())}};
  ReportTable t;
  t.name = "human metrics by " + group_by_name(group_by);
  t.columns = {group_by_name(group_by), "n", "coherence", "semantic accuracy (pooled)",
               "semantic accuracy (mean of ratios)", "good hallucination %",
               "bad hallucination %", "question added %", "mean words", "dialogue act match %"};
  ordered_json rows = ordered_json::array();
  for (const GroupSummary &g : groups) {
    t.rows.push_back({ReportCell::text(g.group), ReportCell::count(g.n),
                      ReportCell::number(g.coherence),
                      ReportCell::number(g.semantic_accuracy_pooled),
                      ReportCell::number(g.semantic_accuracy_mean),
                      ReportCell::number(g.good_hallucination_pct),
                      ReportCell::number(g.bad_hallucination_pct),
                      ReportCell::number(g.question_added_pct), opt_cell(g.mean_words),
                      opt_cell(g.da_match_pct)});
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

std::vector<ItemScore> item_scores_from_report(const std::string &report_json) {
  std::vector<ItemScore> out;
  try {
    json doc = json::parse(report_json);
    for (const json &j : doc.at("data").at("items")) {
      ItemScore s;
      s.item_key = j.at("item_key").get<std::string>();
      s.source_key = j.value("source_key", "");
      s.backend = j.value("backend", "");
      s.format = j.value("format", "");
      s.train_topic = j.value("train_topic", "");
      s.test_topic = j.value("test_topic", "");
      s.dialogue_act = j.value("dialogue_act", "");
      s.k = j.value("k", size_t{0});
      if (j.contains("surface")) s.surface = j.at("surface").get<double>();
      s.semantic_accuracy = j.value("semantic_accuracy", 0.0);
      s.realized = j.value("realized", size_t{0});
      s.total = j.value("total", size_t{0});
      s.da_verdict = j.value("da_verdict", "");
      s.question_added = j.value("question_added", false);
      s.words = j.value("words", size_t{0});
      out.push_back(std::move(s));
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kValidationError, std::string("report: ") + e.what());
  }
  return out;
}

void write_run(const RunOutput &run, const std::string &dir, const std::string &basename) {
  std::filesystem::create_directories(dir);
  write_report(run.report, dir, basename);
  write_file_atomic((std::filesystem::path(dir) / "manifest.json").string(), run.manifest_text);
  if (run.report.kind == "novel") {
    write_file_atomic((std::filesystem::path(dir) / "package.jsonl").string(),
                      package_text(run.package));
  }
}

}  // namespace m2t

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

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "m2t/annotation.h"
#include "m2t/corpus.h"
#include "m2t/digest.h"
#include "m2t/error.h"
#include "m2t/experiment.h"
#include "m2t/kg_corpus.h"
#include "m2t/llm_client.h"
#include "m2t/mr_format.h"
#include "m2t/prompt.h"
#include "m2t/report.h"
#include "m2t/schema.h"
#include "m2t/template_bank.h"
#include "m2t/text.h"
#include "m2t/triple_source.h"

namespace {

using namespace m2t;

struct Common {
  std::vector<std::string> backends = {"mock"};
  std::string registry;
  uint64_t seed = 0;
  size_t candidates = 1;
  double temperature = 0.7;
  size_t max_tokens = 80;
  std::string store;
  std::string scorer_url;
  size_t parallel = 4;
  size_t budget = 0;
  size_t rate = 0;
  std::string out_dir = "out";
};

void add_common(CLI::App *cmd, Common &c, bool scoring) {
  cmd->add_option("--backend", c.backends, "backend ids (repeatable)");
  cmd->add_option("--registry", c.registry, "backend registry JSON");
  cmd->add_option("--seed", c.seed, "sampling seed");
  cmd->add_option("--candidates", c.candidates, "completions per prompt");
  cmd->add_option("--temperature", c.temperature);
  cmd->add_option("--max-tokens", c.max_tokens);
  cmd->add_option("--store", c.store, "generation cache (JSONL)");
  cmd->add_option("--parallel", c.parallel, "requests in flight");
  cmd->add_option("--budget", c.budget, "max backend requests, 0 = unlimited");
  cmd->add_option("--rate", c.rate, "max requests per second, 0 = unlimited");
  cmd->add_option("--out-dir", c.out_dir, "report directory");
  if (scoring) cmd->add_option("--scorer-url", c.scorer_url, "remote scorer base URL");
}

ExperimentConfig to_config(const Common &c) {
  ExperimentConfig cfg;
  cfg.backends = c.backends;
  cfg.backend_registry = c.registry;
  cfg.seed = c.seed;
  cfg.num_candidates = c.candidates;
  cfg.temperature = c.temperature;
  cfg.max_tokens = c.max_tokens;
  cfg.store_path = c.store;
  cfg.scorer_url = c.scorer_url;
  cfg.parallelism = c.parallel;
  cfg.client.budget = c.budget;
  cfg.client.rate_limit = c.rate;
  return cfg;
}

std::vector<PromptFormat> parse_formats(const std::vector<std::string> &names) {
  std::vector<PromptFormat> out;
  for (const std::string &n : names) out.push_back(parse_format(n));
  return out;
}

void finish(const RunOutput &run, const std::string &dir, const std::string &base) {
  write_run(run, dir, base);
  std::cout << render_markdown(run.report);
  std::cerr << "wrote " << dir << "/" << base << ".{json,tsv,md}\n";
}

// Test MRs: one per line, optionally "topic<TAB>mr".
std::vector<std::pair<std::string, MeaningRepresentation>> read_mr_file(const std::string &path) {
  std::vector<std::pair<std::string, MeaningRepresentation>> out;
  for (const std::string &line : read_lines(path)) {
    std::string_view t = trim(line);
    if (t.empty() || starts_with(t, "#")) continue;
    std::vector<std::string> f = split(line, "\t");
    std::string topic = kTopicOther;
    std::string text = line;
    if (f.size() == 2) {
      topic = trim_copy(f[0]);
      text = f[1];
    } else if (f.size() == 3) {
      topic = trim_copy(f[1]);
      text = f[2];
    }
    MeaningRepresentation mr = parse_any_mr(trim(text), topic);
    out.emplace_back(topic, std::move(mr));
  }
  return out;
}

int run(int argc, char **argv) {
  CLI::App app{"meaning-to-text evaluation toolkit"};
  app.require_subcommand(1);

  // corpus
  auto *corpus = app.add_subcommand("corpus", "generate the synthetic KG corpus");
  std::string c_source = "fixture:";
  std::string c_cache;
  std::string c_out = "data/kg/corpus.jsonl";
  std::string c_manifest;
  CorpusSplitConfig c_split{1000, 100, 25, 0};
  corpus->add_option("--source", c_source, "fixture:[path] or a SPARQL endpoint URL");
  corpus->add_option("--cache-dir", c_cache);
  corpus->add_option("--train", c_split.train_target);
  corpus->add_option("--dev", c_split.dev_target);
  corpus->add_option("--test-per-category", c_split.test_per_category);
  corpus->add_option("--seed", c_split.seed);
  corpus->add_option("--out", c_out);
  corpus->add_option("--manifest", c_manifest, "default: <out>.manifest.json");

  // fetch
  auto *fetch = app.add_subcommand("fetch", "fetch triples for one relation");
  std::string f_relation, f_endpoint = "fixture:", f_cache, f_topic;
  size_t f_limit = 10;
  fetch->add_option("--relation", f_relation)->required();
  fetch->add_option("--limit", f_limit);
  fetch->add_option("--endpoint", f_endpoint);
  fetch->add_option("--cache-dir", f_cache);
  fetch->add_option("--topic", f_topic);

  // generate
  auto *gen = app.add_subcommand("generate", "few-shot completions for a file of MRs");
  std::string g_format = "s2s", g_in, g_out, g_corpus, g_strategy = "uniform";
  size_t g_k = 2;
  Common g;
  gen->add_option("--format", g_format)->check(CLI::IsMember({"s2s", "qa"}));
  gen->add_option("--k", g_k)->check(CLI::IsMember({2, 3, 10}));
  gen->add_option("--in", g_in, "MR file")->required();
  gen->add_option("--out", g_out, "generation store")->required();
  gen->add_option("--corpus", g_corpus, "exemplar corpus: KG JSONL or Viggo directory");
  gen->add_option("--strategy", g_strategy)->check(CLI::IsMember({"uniform", "per_dialogue_act"}));
  add_common(gen, g, false);

  // annotate
  auto *ann = app.add_subcommand("annotate", "label an annotation package");
  std::string a_store, a_rater, a_filter, a_package;
  ann->add_option("--store", a_store, "annotation store")->required();
  ann->add_option("--rater", a_rater)->required();
  ann->add_option("--filter", a_filter, "field=value[,field=value]");
  ann->add_option("--package", a_package, "package JSONL")->required();

  // report
  auto *rep = app.add_subcommand("report", "aggregate human labels");
  std::string r_store, r_package, r_group = "topic", r_out = "out";
  rep->add_option("--store", r_store)->required();
  rep->add_option("--package", r_package)->required();
  rep->add_option("--group-by", r_group)->check(CLI::IsMember({"topic", "model", "dialogue_act"}));
  rep->add_option("--out-dir", r_out);

  // matrix
  auto *mat = app.add_subcommand("matrix", "cross-domain train/test matrix");
  Common m;
  std::string m_corpus;
  std::vector<std::string> m_formats = {"s2s", "qa"};
  std::vector<std::string> m_topics = {"movies", "music", "sports", "tv"};
  size_t m_k = 10, m_train = 10, m_test = 50;
  mat->add_option("--corpus", m_corpus, "KG corpus JSONL");
  mat->add_option("--format", m_formats);
  mat->add_option("--topic", m_topics);
  mat->add_option("--k", m_k);
  mat->add_option("--train-per-topic", m_train);
  mat->add_option("--test-per-topic", m_test);
  add_common(mat, m, true);

  // novel
  auto *nov = app.add_subcommand("novel", "generate for novel MRs and package them");
  Common n;
  std::string n_in, n_exemplars, n_format = "s2s";
  nov->add_option("--in", n_in, "id<TAB>topic<TAB>mr file")->required();
  nov->add_option("--exemplars", n_exemplars, "mr<TAB>reference file");
  nov->add_option("--format", n_format)->check(CLI::IsMember({"s2s", "qa"}));
  add_common(nov, n, false);

  // viggo
  auto *vig = app.add_subcommand("viggo", "dialogue-act corpus comparison");
  Common v;
  std::string v_corpus;
  std::vector<std::string> v_formats = {"s2s", "qa"};
  std::vector<size_t> v_ks = {3, 10};
  size_t v_test = 100;
  vig->add_option("--corpus", v_corpus, "directory with viggo-{train,valid,test}.csv");
  vig->add_option("--format", v_formats);
  vig->add_option("--k", v_ks);
  vig->add_option("--test-size", v_test);
  add_common(vig, v, true);

  // correlate
  auto *cor = app.add_subcommand("correlate", "correlate automatic scores with human labels");
  std::string x_scores, x_store, x_out = "out";
  cor->add_option("--scores", x_scores, "report JSON from matrix or viggo")->required();
  cor->add_option("--annotations", x_store, "annotation store")->required();
  cor->add_option("--out-dir", x_out);

  CLI11_PARSE(app, argc, argv);

  if (*corpus) {
    MrSchema schema = MrSchema::load_default();
    TemplateBank bank = TemplateBank::load_default();
    std::unique_ptr<TripleSource> source;
    if (starts_with(c_source, "fixture:")) {
      std::string p = c_source.substr(8);
      source = std::make_unique<FixtureTripleSource>(p.empty() ? FixtureTripleSource::load_default()
                                                               : FixtureTripleSource::load(p));
    } else {
      SparqlOptions opts;
      opts.endpoint = c_source;
      opts.cache_dir = c_cache.empty() ? "cache/sparql" : c_cache;
      source = std::make_unique<SparqlTripleSource>(schema, opts);
    }
    GeneratedCorpus gc = generate_corpus(*source, bank, c_split);
    std::filesystem::path out(c_out);
    if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
    std::string manifest = c_manifest.empty() ? c_out + ".manifest.json" : c_manifest;
    write_corpus(gc, c_out, manifest);
    for (const std::string &w : gc.warnings) std::cerr << w << "\n";
    std::cerr << "wrote " << gc.records.size() << " records to " << c_out << "\n";
    return 0;
  }

  if (*fetch) {
    MrSchema schema = MrSchema::load_default();
    for (const Triple &t : fetch_triples(f_relation, f_limit, f_endpoint, schema, f_cache, f_topic)) {
      nlohmann::ordered_json j = {{"subject", t.subject}, {"relation", t.relation}, {"object", t.object}};
      if (t.subject_id) j["subject_id"] = *t.subject_id;
      if (t.object_id) j["object_id"] = *t.object_id;
      std::cout << j.dump() << "\n";
    }
    return 0;
  }

  if (*gen) {
    std::vector<CorpusRecord> pool;
    std::string path = g_corpus.empty() ? data_path("kg/corpus.jsonl") : g_corpus;
    if (std::filesystem::is_directory(path)) {
      pool = filter_split(load_viggo_dir(path), "train");
    } else {
      pool = filter_split(load_corpus(path), "train");
    }
    auto mrs = read_mr_file(g_in);
    SamplingLog log;
    std::vector<CorpusRecord> drawn =
        sample_exemplars(pool, g_k, parse_strategy(g_strategy), g.seed, {}, &log);
    std::vector<Exemplar> all;
    for (const CorpusRecord &r : drawn) all.push_back(exemplar_from(r));
    GenerationStore store(g_out);
    ExperimentConfig cfg = to_config(g);
    PromptFormat format = parse_format(g_format);
    size_t done = 0;
    for (const std::string &id : g.backends) {
      CompletionClient client(make_backend(id, g.registry), &store, cfg.client);
      for (const auto &[topic, mr] : mrs) {
        std::vector<Exemplar> ex = all;
        if (parse_strategy(g_strategy) == SamplingStrategy::kPerDialogueAct) {
          ex.clear();
          const ViggoMr *vm = std::get_if<ViggoMr>(&mr);
          for (size_t i = 0; i < drawn.size(); ++i) {
            if (vm != nullptr && drawn[i].dialogue_act() == vm->dialogue_act) ex.push_back(all[i]);
          }
        }
        std::string mr_text = serialize_prompt_mr(mr);
        PromptBundle b = build_prompt(format, ex, mr_text);
        CompletionParams p;
        p.temperature = g.temperature;
        p.max_tokens = g.max_tokens;
        p.stop_sequences = b.stop_sequences;
        p.num_candidates = g.candidates;
        GenerationRecord rec = client.complete(b.rendered, p, mr_text, topic);
        for (const std::string &c : rec.candidates) std::cout << id << "\t" << c << "\n";
        ++done;
      }
    }
    write_file_atomic(g_out + ".sampling.json", log.to_json_text() + "\n");
    std::cerr << done << " prompts, store " << g_out << "\n";
    return 0;
  }

  if (*ann) {
    std::vector<AnnotationItem> items;
    ItemFilter filter(a_filter);
    for (AnnotationItem &it : load_package(a_package)) {
      if (filter.matches(it)) items.push_back(std::move(it));
    }
    AnnotationStore store(a_store);
    size_t added = annotate(items, store, a_rater, std::cin, std::cout);
    std::cerr << added << " records appended to " << a_store << "\n";
    return 0;
  }

  if (*rep) {
    std::vector<AnnotationItem> items = load_package(r_package);
    AnnotationStore store(r_store);
    Report report = annotation_report(store.records(), items, parse_group_by(r_group));
    write_report(report, r_out, "annotation-" + r_group);
    std::cout << render_markdown(report);
    return 0;
  }

  if (*mat) {
    ExperimentConfig cfg = to_config(m);
    cfg.kg_corpus = m_corpus;
    cfg.formats = parse_formats(m_formats);
    cfg.topics = m_topics;
    cfg.k = m_k;
    cfg.train_per_topic = m_train;
    cfg.test_per_topic = m_test;
    finish(run_matrix(cfg), m.out_dir, "matrix");
    return 0;
  }

  if (*nov) {
    ExperimentConfig cfg = to_config(n);
    cfg.formats = {parse_format(n_format)};
    cfg.novel_exemplars = n_exemplars;
    finish(run_novel(cfg, n_in), n.out_dir, "novel");
    return 0;
  }

  if (*vig) {
    ExperimentConfig cfg = to_config(v);
    cfg.viggo_corpus = v_corpus;
    cfg.formats = parse_formats(v_formats);
    cfg.viggo_ks = v_ks;
    cfg.viggo_test_size = v_test;
    finish(run_viggo(cfg), v.out_dir, "viggo");
    return 0;
  }

  if (*cor) {
    std::vector<ItemScore> scores = item_scores_from_report(read_file(x_scores));
    AnnotationStore store(x_store);
    nlohmann::json doc = nlohmann::json::parse(read_file(x_scores));
    Report report = correlate(scores, store.records(), doc.value("manifest_digest", ""));
    write_report(report, x_out, "correlate");
    std::cout << render_markdown(report);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const m2t::Error &e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

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

#ifndef M2T_EXPERIMENT_H_
#define M2T_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "m2t/annotation.h"
#include "m2t/llm_client.h"
#include "m2t/prompt.h"
#include "m2t/report.h"

namespace m2t {

struct ExperimentConfig {
  std::string kg_corpus;     // JSONL; defaults to data/kg/corpus.jsonl
  std::string viggo_corpus;  // directory; defaults to data/viggo
  std::vector<std::string> topics = {"movies", "music", "sports", "tv"};
  size_t k = 10;                // exemplars per KG prompt
  std::vector<PromptFormat> formats = {PromptFormat::kS2S, PromptFormat::kQA};
  std::vector<std::string> backends = {"mock"};
  std::string backend_registry;  // optional registry file
  uint64_t seed = 0;
  size_t train_per_topic = 10;  // training pool per topic; k are drawn from it
  size_t test_per_topic = 50;
  bool viggo_mode = false;
  size_t viggo_test_size = 100;
  std::vector<size_t> viggo_ks = {3, 10};
  size_t num_candidates = 1;
  double temperature = 0.7;
  size_t max_tokens = 80;
  std::string store_path;  // generation store; empty keeps results in memory
  std::string scorer_url;  // remote scorer base URL; empty uses local chrF
  size_t parallelism = 4;
  QaMarkers markers;
  ClientOptions client;
  std::string novel_exemplars;  // TSV mr<TAB>reference; defaults to the shipped pair

  std::string to_json_text() const;
};

// One scored candidate.
struct ItemScore {
  std::string item_key;  // "<cache_key>:<index>"
  std::string source_key;  // corpus record or novel MR id
  std::string backend;
  std::string format;
  std::string train_topic;  // matrix only
  std::string test_topic;
  std::string dialogue_act;  // Viggo only
  size_t k = 0;
  std::optional<double> surface;
  double semantic_accuracy = 0;
  size_t realized = 0;
  size_t total = 0;
  std::string da_verdict;  // Viggo only
  bool question_added = false;
  size_t words = 0;
};

struct RunOutput {
  Report report;
  std::string manifest_text;
  std::vector<ItemScore> items;
  std::vector<AnnotationItem> package;  // novel runs
};

// Cross-domain matrix: for every format x backend x train topic, prompts built
// from that topic's exemplars are run on every topic's test items.
RunOutput run_matrix(const ExperimentConfig &cfg);

// 2-shot generation for novel MRs (TSV: id<TAB>topic<TAB>mr). Produces an
// annotation package and automatic advisory metrics; no surface similarity.
RunOutput run_novel(const ExperimentConfig &cfg, const std::string &novel_mr_file);

// Dialogue-act corpus: viggo_ks x formats x backends with per-act exemplars.
RunOutput run_viggo(const ExperimentConfig &cfg);

// Pearson r between surface scores and human labels (semantic accuracy,
// coherence) per model and overall, joined on item_key. Throws EmptyGroup when
// nothing joins.
Report correlate(const std::vector<ItemScore> &scores,
                 const std::vector<AnnotationRecord> &annotations,
                 const std::string &manifest_digest = "");

// Human-metric summary table for `report --group-by`.
Report annotation_report(const std::vector<AnnotationRecord> &records,
                         const std::vector<AnnotationItem> &items, GroupBy group_by);

std::vector<ItemScore> item_scores_from_report(const std::string &report_json);

// Writes the report files, manifest.json and (if any) package.jsonl to `dir`.
void write_run(const RunOutput &run, const std::string &dir, const std::string &basename);

}  // namespace m2t

#endif  // M2T_EXPERIMENT_H_

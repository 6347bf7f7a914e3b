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

#ifndef M2T_KG_CORPUS_H_
#define M2T_KG_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "m2t/corpus.h"
#include "m2t/template_bank.h"
#include "m2t/triple_source.h"

namespace m2t {

struct CorpusSplitConfig {
  size_t train_target = 0;
  size_t dev_target = 0;
  size_t test_per_category = 0;
  uint64_t seed = 0;
};

struct CategoryCount {
  std::string category;
  std::string topic;
  size_t generated = 0;
  size_t train = 0;
  size_t dev = 0;
  size_t test = 0;
};

struct GeneratedCorpus {
  // Ordered train, dev, test; by key within a split.
  std::vector<CorpusRecord> records;
  std::vector<CategoryCount> categories;
  std::vector<std::string> warnings;  // InsufficientTriples and friends
  size_t dropped = 0;                 // surplus records beyond the targets
  std::string provenance;
  CorpusSplitConfig config;

  // One JSON record per line (see kg_record_json_line).
  std::string corpus_text() const;
  // Seed, targets, per-category counts, warnings and the corpus digest.
  std::string manifest_text() const;
};

// Builds the templated KG corpus. For every corpus category of `bank`,
// triple groups are drawn from `source`, realized with a per-record seed, and
// assigned to splits by a hash of (record key, seed): the lowest
// test_per_category hashes of each category go to test, the rest fill dev and
// then train in hash order. A source too small for the targets yields a
// partial corpus with an InsufficientTriples warning.
GeneratedCorpus generate_corpus(TripleSource &source, const TemplateBank &bank,
                                const CorpusSplitConfig &cfg);

// Writes <corpus_path> and <manifest_path> atomically.
void write_corpus(const GeneratedCorpus &corpus, const std::string &corpus_path,
                  const std::string &manifest_path);

}  // namespace m2t

#endif  // M2T_KG_CORPUS_H_

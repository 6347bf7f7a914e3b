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

#ifndef M2T_CORPUS_H_
#define M2T_CORPUS_H_

#include <string>
#include <vector>

#include "m2t/mr.h"
#include "m2t/schema.h"

namespace m2t {

inline constexpr const char *kTopicVideoGames = "video_games";

// One MR -> text pair from either corpus.
struct CorpusRecord {
  std::string key;
  std::string topic;
  MeaningRepresentation mr;
  std::string reference;
  std::string split;               // "train", "dev" or "test"
  std::string template_category;   // KG corpus only
  std::string template_id;         // KG corpus only

  // Empty for KG records.
  std::string dialogue_act() const;
};

// RFC 4180 CSV: quoted fields, doubled quotes, embedded newlines.
std::vector<std::vector<std::string>> parse_csv(const std::string &text);
std::string csv_escape(const std::string &field);

// Reads a ViGGO-format CSV (header row with "mr" and "ref" columns). Keys are
// "viggo-<split>-<row>" with a zero-padded row index.
std::vector<CorpusRecord> load_viggo_csv(const std::string &path,
                                         const std::string &split,
                                         const MrSchema *strict = nullptr);

// Reads <dir>/viggo-train.csv, viggo-valid.csv (as "dev") and viggo-test.csv,
// skipping files that are absent.
std::vector<CorpusRecord> load_viggo_dir(const std::string &dir,
                                         const MrSchema *strict = nullptr);

// KG corpus: one JSON object per line with fields key, topic, mr_paren,
// mr_s2s, reference, template_category, template_id, split.
std::vector<CorpusRecord> load_kg_corpus(const std::string &path);
std::string kg_record_json_line(const CorpusRecord &record);

// Loads either corpus by looking at the path: a directory or .csv file is
// ViGGO, anything else is the KG JSONL format.
std::vector<CorpusRecord> load_corpus(const std::string &path);

std::vector<CorpusRecord> filter_split(const std::vector<CorpusRecord> &records,
                                       const std::string &split);

}  // namespace m2t

#endif  // M2T_CORPUS_H_

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

#ifndef M2T_PROMPT_H_
#define M2T_PROMPT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "m2t/corpus.h"

namespace m2t {

enum class PromptFormat { kS2S, kQA };

std::string format_name(PromptFormat format);  // "s2s" / "qa"
PromptFormat parse_format(const std::string &name);

struct Exemplar {
  std::string key;  // corpus record key, empty for ad hoc exemplars
  std::string mr;   // serialized
  std::string reference;
};

Exemplar exemplar_from(const CorpusRecord &record);

struct QaMarkers {
  std::string prompt = "[PROMPT]:";
  std::string sentence = "[SENTENCE]:";
  bool trailing_space = false;  // after the final sentence marker
};

struct PromptBundle {
  PromptFormat format = PromptFormat::kS2S;
  std::vector<Exemplar> exemplars;
  std::string test_mr;
  std::string rendered;
  std::vector<std::string> stop_sequences;
};

// <mr>\n<reference>\n\n per exemplar, then <test_mr>\n. Stops: "\n\n".
PromptBundle build_s2s(const std::vector<Exemplar> &exemplars,
                       const std::string &test_mr);

// "[PROMPT]: <mr>\n[SENTENCE]: <reference>\n" per exemplar, then
// "[PROMPT]: <test_mr>\n[SENTENCE]:". Stops: the prompt marker and "\n".
PromptBundle build_qa(const std::vector<Exemplar> &exemplars,
                      const std::string &test_mr,
                      const QaMarkers &markers = QaMarkers());

PromptBundle build_prompt(PromptFormat format,
                          const std::vector<Exemplar> &exemplars,
                          const std::string &test_mr,
                          const QaMarkers &markers = QaMarkers());

enum class SamplingStrategy { kUniform, kPerDialogueAct };

std::string strategy_name(SamplingStrategy strategy);
SamplingStrategy parse_strategy(const std::string &name);

// What sample_exemplars drew, for the run manifest.
struct SamplingLog {
  uint64_t seed = 0;
  size_t k = 0;
  SamplingStrategy strategy = SamplingStrategy::kUniform;
  std::vector<std::string> exemplar_keys;
  std::vector<std::string> test_keys;
  std::map<std::string, size_t> per_dialogue_act;  // per_dialogue_act only

  std::string to_json_text() const;
  static SamplingLog from_json_text(const std::string &text);
};

// Uniform: k records without replacement. Per dialogue act: k records for
// every DA present, grouped by DA in name order. Records whose key is in
// `test_keys` are never drawn. The result depends on the record set and the
// seed, not on the input order.
std::vector<CorpusRecord> sample_exemplars(
    const std::vector<CorpusRecord> &corpus, size_t k, SamplingStrategy strategy,
    uint64_t seed, const std::vector<std::string> &test_keys = {},
    SamplingLog *log = nullptr);

// Exemplar keys that also appear among the test keys.
std::vector<std::string> audit_leakage(const SamplingLog &log);

}  // namespace m2t

#endif  // M2T_PROMPT_H_

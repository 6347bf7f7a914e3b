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

#ifndef M2T_METRICS_H_
#define M2T_METRICS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "m2t/lexicon.h"
#include "m2t/mr.h"

namespace m2t {

struct SlotAlignment {
  std::string key;  // "attr" for slots, "subject|relation|object" for triples
  bool matched = false;
  std::optional<std::string> matched_span;  // normalized text
  bool relation_matched = false;            // triples only
};

struct AlignmentReport {
  size_t realized = 0;
  size_t total = 0;
  double ratio = 0.0;  // realized / total; 1.0 for an MR without content units
  std::vector<SlotAlignment> per_slot;
  size_t relations_matched = 0;       // triples whose relation label occurs
  std::vector<std::string> warnings;  // e.g. MissingLexiconEntry
};

// A triple is realized when its object, or a lexicon variant of it, occurs
// in the normalized text. A slot is realized when every value (or variant)
// occurs; yes/no slots and empty slots match on lexicon keywords. Years also
// match spelled-out forms.
AlignmentReport semantic_accuracy(const MeaningRepresentation &mr,
                                  std::string_view text, const Lexicon &lexicon);

enum class DaVerdict { kMatch, kMismatch, kUncertain };

std::string verdict_name(DaVerdict verdict);

DaVerdict dialogue_act_match(const std::string &dialogue_act, std::string_view text);

// Dialogue acts whose realization carries one question.
bool licenses_question(const MeaningRepresentation &mr);

// True when the last sentence is a question the MR does not license.
bool question_added(const MeaningRepresentation &mr, std::string_view text);

size_t word_count(std::string_view text);

// Sentences split after runs of ".", "!" and "?"; each keeps its terminator.
std::vector<std::string> split_sentences(std::string_view text);
bool is_question(std::string_view sentence);

}  // namespace m2t

#endif  // M2T_METRICS_H_

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

#ifndef M2T_ANNOTATION_H_
#define M2T_ANNOTATION_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "m2t/llm_client.h"

namespace m2t {

// Coherence scale. 3 is "makes sense and is natural"; 2 and 1 are
// toolkit-defined anchors.
inline constexpr int kCoherenceMin = 1;
inline constexpr int kCoherenceMax = 3;
const char *coherence_anchor(int level);

struct AnnotationRecord {
  std::string item_key;
  std::string rater_id;
  int coherence = 0;
  size_t realized = 0;
  size_t total = 0;
  bool good_hallucination = false;
  bool bad_hallucination = false;
  bool question_added = false;
  std::optional<bool> da_match;  // dialogue-act MRs only
  std::string notes;
  std::vector<std::string> tags;  // e.g. "redundant", "contradictory"

  std::string to_json_line() const;
  static AnnotationRecord from_json_line(const std::string &line);
};

// Throws OutOfRangeLabel for a coherence outside 1..3 or realized > total.
void validate_record(const AnnotationRecord &record);

// One candidate output awaiting labels.
struct AnnotationItem {
  std::string item_key;
  std::string model;  // backend id
  std::string topic;
  std::string dialogue_act;  // empty for KG MRs
  std::string mr;            // serialized
  std::string text;
  size_t total = 0;          // content units of the MR

  std::string to_json_line() const;
  static AnnotationItem from_json_line(const std::string &line);
};

// Items for every candidate of every record that carries an MR.
std::vector<AnnotationItem> items_from_generations(const std::vector<GenerationRecord> &records);

std::string package_text(const std::vector<AnnotationItem> &items);
std::vector<AnnotationItem> load_package(const std::string &path);

// Throws ValidationError when the record's total disagrees with the item.
void validate_against(const AnnotationRecord &record, const AnnotationItem &item);

// "field=value[,field=value...]" over model, topic, dialogue_act, item_key.
// Empty matches everything.
class ItemFilter {
 public:
  explicit ItemFilter(const std::string &expr = "");
  bool matches(const AnnotationItem &item) const;

 private:
  std::vector<std::pair<std::string, std::string>> clauses_;
};

// Append-only JSONL annotation store.
class AnnotationStore {
 public:
  explicit AnnotationStore(std::string path);
  const std::vector<AnnotationRecord> &records() const { return records_; }
  bool has(const std::string &item_key, const std::string &rater_id) const;
  void append(const AnnotationRecord &record);

 private:
  std::string path_;
  std::vector<AnnotationRecord> records_;
};

// Interactive labeling: prompts on `out`, reads answers from `in`, appends one
// record per unlabeled (item, rater) pair. Out-of-range answers are re-asked.
// Stops at end of input or on "q". Returns the number of records appended.
size_t annotate(const std::vector<AnnotationItem> &items, AnnotationStore &store,
                const std::string &rater_id, std::istream &in, std::ostream &out);

enum class GroupBy { kTopic, kModel, kDialogueAct };
GroupBy parse_group_by(const std::string &name);
std::string group_by_name(GroupBy group_by);

struct GroupSummary {
  std::string group;  // "overall" for the final row
  size_t n = 0;
  double coherence = 0;
  double semantic_accuracy_pooled = 0;  // sum realized / sum total
  double semantic_accuracy_mean = 0;    // mean of per-record ratios
  double good_hallucination_pct = 0;
  double bad_hallucination_pct = 0;
  double question_added_pct = 0;
  std::optional<double> mean_words;       // when item texts are known
  std::optional<double> da_match_pct;     // over records with a da_match label
};

// Per-group means plus an "overall" row. Groups are sorted by name; the
// result does not depend on record order. Throws EmptyGroup when no record
// can be grouped.
std::vector<GroupSummary> aggregate(const std::vector<AnnotationRecord> &records,
                                    const std::vector<AnnotationItem> &items,
                                    GroupBy group_by);

}  // namespace m2t

#endif  // M2T_ANNOTATION_H_

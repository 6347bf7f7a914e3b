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

#include "m2t/annotation.h"

#include <algorithm>
#include <filesystem>
#include <json.hpp>
#include <set>

#include "m2t/error.h"
#include "m2t/metrics.h"
#include "m2t/mr_format.h"
#include "m2t/text.h"

namespace m2t {

using nlohmann::json;
using nlohmann::ordered_json;

const char *coherence_anchor(int level) {
  switch (level) {
    case 3:
      return "makes sense and is natural";
    case 2:
      return "understandable, with noticeable flaws";
    case 1:
      return "incoherent";
  }
  return "";
}

std::string AnnotationRecord::to_json_line() const {
  ordered_json j;
  j["item_key"] = item_key;
  j["rater_id"] = rater_id;
  j["coherence"] = coherence;
  j["realized"] = realized;
  j["total"] = total;
  j["good_hallucination"] = good_hallucination;
  j["bad_hallucination"] = bad_hallucination;
  j["question_added"] = question_added;
  j["da_match"] = da_match ? json(*da_match) : json(nullptr);
  j["notes"] = notes;
  j["tags"] = tags;
  return j.dump();
}

AnnotationRecord AnnotationRecord::from_json_line(const std::string &line) {
  AnnotationRecord r;
  try {
    json j = json::parse(line);
    r.item_key = j.at("item_key").get<std::string>();
    r.rater_id = j.at("rater_id").get<std::string>();
    r.coherence = j.at("coherence").get<int>();
    r.realized = j.at("realized").get<size_t>();
    r.total = j.at("total").get<size_t>();
    r.good_hallucination = j.value("good_hallucination", false);
    r.bad_hallucination = j.value("bad_hallucination", false);
    r.question_added = j.value("question_added", false);
    if (j.contains("da_match") && !j.at("da_match").is_null()) {
      r.da_match = j.at("da_match").get<bool>();
    }
    r.notes = j.value("notes", "");
    r.tags = j.value("tags", std::vector<std::string>{});
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kValidationError, std::string("annotation record: ") + e.what());
  }
  return r;
}

void validate_record(const AnnotationRecord &r) {
  if (r.coherence < kCoherenceMin || r.coherence > kCoherenceMax) {
    throw Error(ErrorKind::kOutOfRangeLabel,
                "coherence " + std::to_string(r.coherence) + " outside 1..3");
  }
  if (r.realized > r.total) {
    throw Error(ErrorKind::kOutOfRangeLabel, "realized " + std::to_string(r.realized) +
                                                 " exceeds total " + std::to_string(r.total));
  }
  if (r.item_key.empty() || r.rater_id.empty()) {
    throw Error(ErrorKind::kValidationError, "item_key and rater_id are required");
  }
}

std::string AnnotationItem::to_json_line() const {
  ordered_json j;
  j["item_key"] = item_key;
  j["model"] = model;
  j["topic"] = topic;
  j["dialogue_act"] = dialogue_act;
  j["mr"] = mr;
  j["text"] = text;
  j["total"] = total;
  return j.dump();
}

AnnotationItem AnnotationItem::from_json_line(const std::string &line) {
  AnnotationItem it;
  try {
    json j = json::parse(line);
    it.item_key = j.at("item_key").get<std::string>();
    it.model = j.value("model", "");
    it.topic = j.value("topic", "");
    it.dialogue_act = j.value("dialogue_act", "");
    it.mr = j.at("mr").get<std::string>();
    it.text = j.value("text", "");
    it.total = j.at("total").get<size_t>();
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kValidationError, std::string("annotation item: ") + e.what());
  }
  return it;
}

std::vector<AnnotationItem> items_from_generations(
    const std::vector<GenerationRecord> &records) {
  std::vector<AnnotationItem> items;
  for (const GenerationRecord &g : records) {
    if (g.mr.empty()) continue;
    MeaningRepresentation mr = parse_any_mr(g.mr, g.topic.empty() ? kTopicOther : g.topic);
    for (size_t i = 0; i < g.candidates.size(); ++i) {
      AnnotationItem it;
      it.item_key = item_key(g.cache_key, i);
      it.model = g.backend_id;
      it.topic = g.topic;
      if (const auto *v = std::get_if<ViggoMr>(&mr)) it.dialogue_act = v->dialogue_act;
      it.mr = g.mr;
      it.text = g.candidates[i];
      it.total = content_unit_count(mr);
      items.push_back(std::move(it));
    }
  }
  return items;
}

std::string package_text(const std::vector<AnnotationItem> &items) {
  std::string out;
  for (const AnnotationItem &it : items) out += it.to_json_line() + "\n";
  return out;
}

std::vector<AnnotationItem> load_package(const std::string &path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::kStoreMissing, path);
  std::vector<AnnotationItem> items;
  for (const std::string &line : read_lines(path)) {
    if (!trim(line).empty()) items.push_back(AnnotationItem::from_json_line(line));
  }
  return items;
}

void validate_against(const AnnotationRecord &record, const AnnotationItem &item) {
  validate_record(record);
  if (record.item_key != item.item_key) {
    throw Error(ErrorKind::kValidationError, "record " + record.item_key +
                                                 " checked against item " + item.item_key);
  }
  if (record.total != item.total) {
    throw Error(ErrorKind::kValidationError,
                record.item_key + ": total " + std::to_string(record.total) +
                    " but the MR has " + std::to_string(item.total) + " units");
  }
}

ItemFilter::ItemFilter(const std::string &expr) {
  for (const std::string &clause : split(expr, ",")) {
    if (trim(clause).empty()) continue;
    size_t eq = clause.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::kConfigError, "filter clause needs field=value: " + clause);
    }
    std::string field = trim_copy(clause.substr(0, eq));
    if (field != "model" && field != "topic" && field != "dialogue_act" && field != "item_key") {
      throw Error(ErrorKind::kConfigError, "unknown filter field: " + field);
    }
    clauses_.emplace_back(field, trim_copy(clause.substr(eq + 1)));
  }
}

bool ItemFilter::matches(const AnnotationItem &item) const {
  for (const auto &[field, value] : clauses_) {
    const std::string &actual = field == "model"          ? item.model
                                : field == "topic"        ? item.topic
                                : field == "dialogue_act" ? item.dialogue_act
                                                          : item.item_key;
    if (actual != value) return false;
  }
  return true;
}

AnnotationStore::AnnotationStore(std::string path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  for (const std::string &line : read_lines(path_)) {
    if (!trim(line).empty()) records_.push_back(AnnotationRecord::from_json_line(line));
  }
}

bool AnnotationStore::has(const std::string &item_key, const std::string &rater_id) const {
  for (const AnnotationRecord &r : records_) {
    if (r.item_key == item_key && r.rater_id == rater_id) return true;
  }
  return false;
}

void AnnotationStore::append(const AnnotationRecord &record) {
  validate_record(record);
  append_line(path_, record.to_json_line());
  records_.push_back(record);
}

namespace {

struct Quit {};

std::string ask(std::istream &in, std::ostream &out, const std::string &prompt) {
  out << prompt << std::flush;
  std::string line;
  if (!std::getline(in, line)) throw Quit{};
  std::string t = trim_copy(line);
  if (t == "q") throw Quit{};
  return t;
}

long ask_int(std::istream &in, std::ostream &out, const std::string &prompt, long lo,
             long hi) {
  for (;;) {
    std::string a = ask(in, out, prompt);
    char *end = nullptr;
    long v = std::strtol(a.c_str(), &end, 10);
    if (!a.empty() && end != nullptr && *end == '\0' && v >= lo && v <= hi) return v;
    out << "OutOfRangeLabel: expected an integer in " << lo << ".." << hi << "\n";
  }
}

std::optional<bool> ask_flag(std::istream &in, std::ostream &out, const std::string &prompt,
                             bool allow_unset) {
  for (;;) {
    std::string a = to_lower_ascii(ask(in, out, prompt));
    if (a == "y" || a == "yes") return true;
    if (a == "n" || a == "no") return false;
    if (a.empty()) return allow_unset ? std::nullopt : std::optional<bool>(false);
    if (a == "-" && allow_unset) return std::nullopt;
    out << "OutOfRangeLabel: answer y or n\n";
  }
}

}  // namespace

size_t annotate(const std::vector<AnnotationItem> &items, AnnotationStore &store,
                const std::string &rater_id, std::istream &in, std::ostream &out) {
  if (rater_id.empty()) throw Error(ErrorKind::kValidationError, "rater id is required");
  size_t appended = 0;
  size_t pending = 0;
  for (const AnnotationItem &it : items) pending += store.has(it.item_key, rater_id) ? 0 : 1;
  out << pending << " item(s) to label as " << rater_id << "\n";
  try {
    for (const AnnotationItem &it : items) {
      if (store.has(it.item_key, rater_id)) continue;
      out << "\n== " << it.item_key << " [" << it.model << ", " << it.topic << "]\n"
          << "MR:   " << it.mr << "\n"
          << "Text: " << it.text << "\n"
          << "Coherence: 3 = " << coherence_anchor(3) << ", 2 = " << coherence_anchor(2)
          << ", 1 = " << coherence_anchor(1) << "\n";
      AnnotationRecord r;
      r.item_key = it.item_key;
      r.rater_id = rater_id;
      r.total = it.total;
      r.coherence = static_cast<int>(ask_int(in, out, "coherence [1-3]: ", 1, 3));
      r.realized = static_cast<size_t>(ask_int(
          in, out, "realized [0-" + std::to_string(it.total) + "]: ", 0,
          static_cast<long>(it.total)));
      r.good_hallucination = *ask_flag(in, out, "good hallucination [y/N]: ", false);
      r.bad_hallucination = *ask_flag(in, out, "bad hallucination [y/N]: ", false);
      r.question_added = *ask_flag(in, out, "question added [y/N]: ", false);
      if (!it.dialogue_act.empty()) {
        r.da_match = ask_flag(in, out, "dialogue act matches [y/n/-]: ", true);
      }
      r.notes = ask(in, out, "notes: ");
      store.append(r);
      ++appended;
    }
  } catch (const Quit &) {
    out << "\nstopped; " << appended << " record(s) saved\n";
    return appended;
  }
  out << "\ndone; " << appended << " record(s) saved\n";
  return appended;
}

GroupBy parse_group_by(const std::string &name) {
  if (name == "topic") return GroupBy::kTopic;
  if (name == "model") return GroupBy::kModel;
  if (name == "dialogue_act" || name == "da") return GroupBy::kDialogueAct;
  throw Error(ErrorKind::kConfigError, "unknown group-by: " + name);
}

std::string group_by_name(GroupBy group_by) {
  switch (group_by) {
    case GroupBy::kTopic:
      return "topic";
    case GroupBy::kModel:
      return "model";
    case GroupBy::kDialogueAct:
      return "dialogue_act";
  }
  return "topic";
}

namespace {

struct Acc {
  size_t n = 0;
  long coherence = 0;
  size_t realized = 0, total = 0;
  double ratio_sum = 0;
  size_t good = 0, bad = 0, question = 0;
  size_t words = 0, with_text = 0;
  size_t da_yes = 0, da_labeled = 0;

  void add(const AnnotationRecord &r, const AnnotationItem *item) {
    ++n;
    coherence += r.coherence;
    realized += r.realized;
    total += r.total;
    ratio_sum += r.total == 0 ? 1.0 : static_cast<double>(r.realized) / static_cast<double>(r.total);
    good += r.good_hallucination;
    bad += r.bad_hallucination;
    question += r.question_added;
    if (item != nullptr) {
      words += word_count(item->text);
      ++with_text;
    }
    if (r.da_match) {
      ++da_labeled;
      da_yes += *r.da_match;
    }
  }

  GroupSummary summary(const std::string &name) const {
    GroupSummary s;
    double dn = static_cast<double>(n);
    s.group = name;
    s.n = n;
    s.coherence = static_cast<double>(coherence) / dn;
    s.semantic_accuracy_pooled =
        total == 0 ? 1.0 : static_cast<double>(realized) / static_cast<double>(total);
    s.semantic_accuracy_mean = ratio_sum / dn;
    s.good_hallucination_pct = 100.0 * static_cast<double>(good) / dn;
    s.bad_hallucination_pct = 100.0 * static_cast<double>(bad) / dn;
    s.question_added_pct = 100.0 * static_cast<double>(question) / dn;
    if (with_text > 0) s.mean_words = static_cast<double>(words) / static_cast<double>(with_text);
    if (da_labeled > 0) {
      s.da_match_pct = 100.0 * static_cast<double>(da_yes) / static_cast<double>(da_labeled);
    }
    return s;
  }
};

}  // namespace

std::vector<GroupSummary> aggregate(const std::vector<AnnotationRecord> &records,
                                    const std::vector<AnnotationItem> &items,
                                    GroupBy group_by) {
  std::map<std::string, const AnnotationItem *> by_key;
  for (const AnnotationItem &it : items) by_key[it.item_key] = &it;
  std::vector<const AnnotationRecord *> sorted;
  for (const AnnotationRecord &r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const AnnotationRecord *a, const AnnotationRecord *b) {
    return a->item_key != b->item_key ? a->item_key < b->item_key : a->rater_id < b->rater_id;
  });
  std::map<std::string, Acc> groups;
  Acc overall;
  for (const AnnotationRecord *r : sorted) {
    validate_record(*r);
    auto it = by_key.find(r->item_key);
    const AnnotationItem *item = it == by_key.end() ? nullptr : it->second;
    if (item != nullptr) validate_against(*r, *item);
    std::string name = "(unknown)";
    if (item != nullptr) {
      name = group_by == GroupBy::kTopic   ? item->topic
             : group_by == GroupBy::kModel ? item->model
                                           : item->dialogue_act;
      if (name.empty()) name = "(none)";
    }
    groups[name].add(*r, item);
    overall.add(*r, item);
  }
  if (overall.n == 0) throw Error(ErrorKind::kEmptyGroup, "no annotation records to aggregate");
  std::vector<GroupSummary> out;
  for (const auto &[name, acc] : groups) out.push_back(acc.summary(name));
  out.push_back(overall.summary("overall"));
  return out;
}

}  // namespace m2t

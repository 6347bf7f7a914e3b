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

#include "m2t/metrics.h"

#include <set>

#include "m2t/normalize.h"
#include "m2t/text.h"

namespace m2t {

namespace {

// Tries each surface form in order; returns the matched span.
std::optional<std::string> find_any(const std::vector<std::string> &tokens,
                                    const std::vector<std::string> &forms) {
  for (const std::string &form : forms) {
    std::vector<std::string> alternatives = {form};
    for (const std::string &y : year_spellings(trim(form))) alternatives.push_back(y);
    for (const std::string &alt : alternatives) {
      std::vector<std::string> needle = match_tokens(alt);
      size_t at = 0;
      if (phrase_occurs(tokens, needle, &at)) {
        std::vector<std::string> span(tokens.begin() + static_cast<long>(at),
                                      tokens.begin() + static_cast<long>(at + needle.size()));
        return join(span, " ");
      }
    }
  }
  return std::nullopt;
}

bool is_yes_no(const std::string &v) {
  std::string f = to_lower_ascii(trim(v));
  return f == "yes" || f == "no" || f == "true" || f == "false";
}

const std::set<std::string> &licensing_acts() {
  static const std::set<std::string> acts = {"confirm", "suggest", "request_attribute",
                                             "verify_attribute", "request_explanation",
                                             "request"};
  return acts;
}

}  // namespace

AlignmentReport semantic_accuracy(const MeaningRepresentation &mr,
                                  std::string_view text, const Lexicon &lexicon) {
  AlignmentReport report;
  std::vector<std::string> tokens = match_tokens(text);
  if (const auto *kg = std::get_if<KgMr>(&mr)) {
    for (const Triple &t : kg->triples) {
      SlotAlignment a;
      a.key = t.subject + "|" + t.relation + "|" + t.object;
      if (!lexicon.has_object_entry(t.object)) {
        report.warnings.push_back("MissingLexiconEntry: " + t.object);
      }
      a.matched_span = find_any(tokens, lexicon.object_variants(t.object));
      a.matched = a.matched_span.has_value();
      a.relation_matched = phrase_occurs(tokens, match_tokens(t.relation));
      if (a.matched) ++report.realized;
      if (a.relation_matched) ++report.relations_matched;
      report.per_slot.push_back(std::move(a));
    }
  } else {
    const ViggoMr &v = std::get<ViggoMr>(mr);
    for (const Slot &slot : v.slots) {
      SlotAlignment a;
      a.key = slot.attribute;
      if (slot.values.empty()) {
        a.matched_span = find_any(tokens, lexicon.empty_keywords(slot.attribute));
      } else {
        std::vector<std::string> spans;
        bool all = true;
        for (const std::string &value : slot.values) {
          std::optional<std::string> span;
          if (lexicon.is_boolean(slot.attribute) && is_yes_no(value)) {
            span = find_any(tokens, lexicon.boolean_keywords(slot.attribute, value));
          } else {
            if (!lexicon.has_value_entry(slot.attribute, value)) {
              report.warnings.push_back("MissingLexiconEntry: " + slot.attribute + "=" + value);
            }
            span = find_any(tokens, lexicon.value_variants(slot.attribute, value));
          }
          if (!span) {
            all = false;
            break;
          }
          spans.push_back(*span);
        }
        if (all) a.matched_span = join(spans, " ... ");
      }
      a.matched = a.matched_span.has_value();
      if (a.matched) ++report.realized;
      report.per_slot.push_back(std::move(a));
    }
  }
  report.total = report.per_slot.size();
  report.ratio = report.total == 0 ? 1.0
                                   : static_cast<double>(report.realized) /
                                         static_cast<double>(report.total);
  return report;
}

std::string verdict_name(DaVerdict verdict) {
  switch (verdict) {
    case DaVerdict::kMatch:
      return "match";
    case DaVerdict::kMismatch:
      return "mismatch";
    case DaVerdict::kUncertain:
      return "uncertain";
  }
  return "uncertain";
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    cur.push_back(c);
    if (c == '.' || c == '!' || c == '?') {
      while (i + 1 < text.size() &&
             (text[i + 1] == '.' || text[i + 1] == '!' || text[i + 1] == '?' ||
              text[i + 1] == '"' || text[i + 1] == ')')) {
        cur.push_back(text[++i]);
      }
      bool boundary = i + 1 >= text.size() || text[i + 1] == ' ' || text[i + 1] == '\n' ||
                      text[i + 1] == '\t';
      if (boundary) {
        std::string s = trim_copy(cur);
        if (!s.empty()) out.push_back(s);
        cur.clear();
      }
    }
  }
  std::string s = trim_copy(cur);
  if (!s.empty()) out.push_back(s);
  return out;
}

bool is_question(std::string_view sentence) {
  sentence = trim(sentence);
  size_t end = sentence.size();
  while (end > 0 && (sentence[end - 1] == '"' || sentence[end - 1] == ')')) --end;
  while (end > 0 && (sentence[end - 1] == '.' || sentence[end - 1] == '!' ||
                     sentence[end - 1] == '?')) {
    if (sentence[end - 1] == '?') return true;
    --end;
  }
  return false;
}

DaVerdict dialogue_act_match(const std::string &dialogue_act, std::string_view text) {
  std::vector<std::string> sentences = split_sentences(text);
  if (sentences.empty()) return DaVerdict::kMismatch;
  size_t questions = 0;
  for (const std::string &s : sentences) questions += is_question(s) ? 1 : 0;
  bool any_question = questions > 0;
  bool last_question = is_question(sentences.back());
  bool declarative = questions < sentences.size();

  if (dialogue_act == "confirm") {
    std::string n = " " + normalize_text(text) + " ";
    bool frame = false;
    for (const char *f : {" do you mean ", " you mean ", " you're referring ",
                          " you are referring ", " are you talking about "}) {
      if (contains(n, f)) frame = true;
    }
    if (any_question && frame) return DaVerdict::kMatch;
    if (any_question || frame) return DaVerdict::kUncertain;
    return DaVerdict::kMismatch;
  }
  if (dialogue_act == "request_attribute" || dialogue_act == "suggest" ||
      dialogue_act == "verify_attribute" || dialogue_act == "request_explanation" ||
      dialogue_act == "request") {
    return any_question ? DaVerdict::kMatch : DaVerdict::kMismatch;
  }
  if (dialogue_act == "inform" || dialogue_act == "give_opinion" ||
      dialogue_act == "recommend") {
    if (!declarative) return DaVerdict::kMismatch;
    if (!any_question) return DaVerdict::kMatch;
    // Questions are tolerated only after the declarative content.
    bool seen_question = false;
    for (const std::string &s : sentences) {
      if (is_question(s)) {
        seen_question = true;
      } else if (seen_question) {
        return DaVerdict::kUncertain;
      }
    }
    return last_question ? DaVerdict::kMatch : DaVerdict::kUncertain;
  }
  return DaVerdict::kUncertain;
}

bool licenses_question(const MeaningRepresentation &mr) {
  const auto *v = std::get_if<ViggoMr>(&mr);
  return v != nullptr && licensing_acts().count(v->dialogue_act) > 0;
}

bool question_added(const MeaningRepresentation &mr, std::string_view text) {
  std::vector<std::string> sentences = split_sentences(text);
  if (sentences.empty() || !is_question(sentences.back())) return false;
  if (!licenses_question(mr)) return true;
  size_t questions = 0;
  for (const std::string &s : sentences) questions += is_question(s) ? 1 : 0;
  return questions > 1;
}

size_t word_count(std::string_view text) {
  size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

}  // namespace m2t

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

#include "m2t/mr_format.h"

#include <cctype>

#include "m2t/error.h"
#include "m2t/text.h"

namespace m2t {

namespace {

constexpr std::string_view kPipe = " | ";
constexpr std::string_view kEq = " = ";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Commas that split a value list: everything but digit,digit.
bool has_splitting_comma(std::string_view s) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != ',') continue;
    bool thousands = i > 0 && i + 1 < s.size() && is_digit(s[i - 1]) &&
                     is_digit(s[i + 1]);
    if (!thousands) return true;
  }
  return false;
}

void require_trimmed(const std::string &field, std::string_view what) {
  if (trim(field).empty()) {
    throw Error(ErrorKind::kInvalidValue, std::string(what) + " is empty");
  }
  if (trim(field).size() != field.size()) {
    throw Error(ErrorKind::kInvalidValue,
                std::string(what) + " has surrounding whitespace: '" + field + "'");
  }
  if (field.find('\n') != std::string::npos) {
    throw Error(ErrorKind::kInvalidValue, std::string(what) + " spans lines");
  }
}

void reject_substring(const std::string &field, std::string_view delim,
                      std::string_view what) {
  if (contains(field, delim)) {
    throw Error(ErrorKind::kEscapingRequired,
                std::string(what) + " '" + field + "' contains reserved '" +
                    std::string(delim) + "'");
  }
}

void reject_chars(const std::string &field, std::string_view chars,
                  std::string_view what) {
  for (char c : chars) {
    if (field.find(c) != std::string::npos) {
      throw Error(ErrorKind::kEscapingRequired,
                  std::string(what) + " '" + field + "' contains reserved '" +
                      std::string(1, c) + "'");
    }
  }
}

// A pipe-form field may not begin or end with a delimiter character either,
// or the surrounding spaces would recreate " | " / " = " on output.
void reject_pipe_edges(const std::string &field, std::string_view what) {
  for (char c : {'|', '='}) {
    if (!field.empty() && (field.front() == c || field.back() == c)) {
      throw Error(ErrorKind::kEscapingRequired,
                  std::string(what) + " '" + field + "' starts or ends with '" +
                      std::string(1, c) + "'");
    }
  }
}

Slot finish_slot(std::string attribute, std::string_view raw_values) {
  Slot slot;
  slot.attribute = std::move(attribute);
  if (slot.attribute.empty()) {
    throw Error(ErrorKind::kSyntaxError, "slot without attribute name");
  }
  slot.values = split_slot_values(raw_values);
  return slot;
}

void add_slot(ViggoMr *mr, Slot slot) {
  if (mr->find(slot.attribute) != nullptr) {
    throw Error(ErrorKind::kDuplicateAttribute, slot.attribute);
  }
  mr->slots.push_back(std::move(slot));
}

}  // namespace

std::vector<std::string> split_slot_values(std::string_view text) {
  std::vector<std::string> values;
  std::string_view body = trim(text);
  if (body.empty()) return values;
  size_t start = 0;
  for (size_t i = 0; i <= body.size(); ++i) {
    bool cut = i == body.size();
    if (!cut && body[i] == ',') {
      bool thousands = i > 0 && i + 1 < body.size() && is_digit(body[i - 1]) &&
                       is_digit(body[i + 1]);
      cut = !thousands;
    }
    if (!cut) continue;
    std::string_view piece = trim(body.substr(start, i - start));
    if (piece.empty()) {
      throw Error(ErrorKind::kSyntaxError,
                  "empty value in list '" + std::string(text) + "'");
    }
    values.emplace_back(piece);
    start = i + 1;
  }
  return values;
}

ViggoMr parse_viggo_mr(std::string_view text, const MrSchema *strict) {
  std::string_view s = trim(text);
  size_t open = s.find('(');
  if (open == std::string_view::npos) {
    throw Error(ErrorKind::kSyntaxError, "missing '(' in '" + std::string(s) + "'");
  }
  ViggoMr mr;
  mr.dialogue_act = trim_copy(s.substr(0, open));
  if (mr.dialogue_act.empty()) {
    throw Error(ErrorKind::kSyntaxError, "missing dialogue act");
  }
  if (s.back() != ')') {
    throw Error(ErrorKind::kSyntaxError, "unbalanced parentheses");
  }
  std::string_view inner = s.substr(open + 1, s.size() - open - 2);

  // Outside brackets: attr names, commas, whitespace. Inside: values, where
  // parentheses are ordinary characters (e.g. "E (for Everyone)").
  size_t i = 0;
  while (true) {
    while (i < inner.size() && std::isspace(static_cast<unsigned char>(inner[i]))) ++i;
    if (i == inner.size()) break;
    size_t bracket = i;
    while (bracket < inner.size() && inner[bracket] != '[') {
      char c = inner[bracket];
      if (c == ']' || c == ',' || c == '(' || c == ')') {
        throw Error(ErrorKind::kSyntaxError,
                    "unexpected '" + std::string(1, c) + "' in slot list");
      }
      ++bracket;
    }
    if (bracket == inner.size()) {
      throw Error(ErrorKind::kSyntaxError, "slot without '[': '" +
                                               std::string(inner.substr(i)) + "'");
    }
    size_t close = inner.find_first_of("[]", bracket + 1);
    if (close == std::string_view::npos || inner[close] != ']') {
      throw Error(ErrorKind::kSyntaxError, "unbalanced brackets");
    }
    add_slot(&mr, finish_slot(trim_copy(inner.substr(i, bracket - i)),
                              inner.substr(bracket + 1, close - bracket - 1)));
    i = close + 1;
    while (i < inner.size() && std::isspace(static_cast<unsigned char>(inner[i]))) ++i;
    if (i == inner.size()) break;
    if (inner[i] != ',') {
      throw Error(ErrorKind::kSyntaxError, "expected ',' between slots");
    }
    ++i;
    while (i < inner.size() && std::isspace(static_cast<unsigned char>(inner[i]))) ++i;
    if (i == inner.size()) {
      throw Error(ErrorKind::kSyntaxError, "trailing ',' in slot list");
    }
  }
  if (strict != nullptr) strict->validate(mr);
  return mr;
}

std::string serialize_viggo_mr(const ViggoMr &mr) {
  check_invariants(mr);
  require_trimmed(mr.dialogue_act, "dialogue act");
  reject_chars(mr.dialogue_act, "()[],", "dialogue act");
  std::string out = mr.dialogue_act + "(";
  for (size_t i = 0; i < mr.slots.size(); ++i) {
    const Slot &slot = mr.slots[i];
    require_trimmed(slot.attribute, "attribute");
    reject_chars(slot.attribute, "()[],", "attribute");
    if (i > 0) out += ", ";
    out += slot.attribute + "[";
    for (size_t j = 0; j < slot.values.size(); ++j) {
      const std::string &v = slot.values[j];
      require_trimmed(v, "value");
      reject_chars(v, "[]", "value");
      if (has_splitting_comma(v)) {
        throw Error(ErrorKind::kEscapingRequired, "value '" + v + "' contains ','");
      }
      if (j > 0) out += ", ";
      out += v;
    }
    out += "]";
  }
  out += ")";
  return out;
}

std::string serialize_viggo_qa(const ViggoMr &mr) {
  check_invariants(mr);
  require_trimmed(mr.dialogue_act, "dialogue act");
  reject_chars(mr.dialogue_act, "|=", "dialogue act");
  std::string out = mr.dialogue_act + " = yes";
  for (const Slot &slot : mr.slots) {
    require_trimmed(slot.attribute, "attribute");
    reject_chars(slot.attribute, "|=", "attribute");
    out += std::string(kPipe) + slot.attribute + " =";
    std::vector<std::string> values;
    for (const std::string &v : slot.values) {
      require_trimmed(v, "value");
      reject_substring(v, kPipe, "value");
      reject_pipe_edges(v, "value");
      if (has_splitting_comma(v)) {
        throw Error(ErrorKind::kEscapingRequired, "value '" + v + "' contains ','");
      }
      values.push_back(v);
    }
    out += " " + join(values, ", ");
  }
  return out;
}

ViggoMr parse_viggo_qa(std::string_view text, const MrSchema *strict) {
  std::vector<std::string> fields = split(trim(text), kPipe);
  ViggoMr mr;
  for (size_t i = 0; i < fields.size(); ++i) {
    std::string_view field = fields[i];
    size_t eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kSyntaxError,
                  "field without '=': '" + std::string(field) + "'");
    }
    std::string name = trim_copy(field.substr(0, eq));
    std::string_view rest = trim(field.substr(eq + 1));
    if (name.empty()) {
      throw Error(ErrorKind::kSyntaxError, "field without a name");
    }
    if (i == 0) {
      if (rest != "yes") {
        throw Error(ErrorKind::kSyntaxError,
                    "first field must be '<dialogue act> = yes'");
      }
      mr.dialogue_act = name;
      continue;
    }
    add_slot(&mr, finish_slot(std::move(name), rest));
  }
  if (strict != nullptr) strict->validate(mr);
  return mr;
}

std::string serialize_kg_s2s(const KgMr &mr) {
  check_invariants(mr);
  std::vector<std::string> groups;
  for (const Triple &t : mr.triples) {
    for (const std::string *f : {&t.subject, &t.relation, &t.object}) {
      require_trimmed(*f, "triple field");
      reject_substring(*f, kPipe, "triple field");
      reject_substring(*f, kEq, "triple field");
      reject_pipe_edges(*f, "triple field");
    }
    groups.push_back(t.subject + std::string(kEq) + t.relation +
                     std::string(kEq) + t.object);
  }
  return join(groups, kPipe);
}

KgMr parse_kg_s2s(std::string_view text, std::string topic) {
  KgMr mr;
  mr.topic = std::move(topic);
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorKind::kSyntaxError, "empty KG MR");
  for (const std::string &group : split(s, kPipe)) {
    std::vector<std::string> parts = split(group, kEq);
    if (parts.size() != 3) {
      throw Error(ErrorKind::kSyntaxError,
                  "expected 'subject = relation = object', got '" + group + "'");
    }
    Triple t{trim_copy(parts[0]), trim_copy(parts[1]), trim_copy(parts[2]), {}, {}};
    mr.triples.push_back(std::move(t));
  }
  check_invariants(mr);
  return mr;
}

std::string serialize_kg_paren(const KgMr &mr) {
  check_invariants(mr);
  std::vector<std::string> groups;
  for (const Triple &t : mr.triples) {
    for (const std::string *f : {&t.subject, &t.relation, &t.object}) {
      require_trimmed(*f, "triple field");
      reject_chars(*f, "(),", "triple field");
    }
    groups.push_back("(" + t.subject + ", " + t.relation + ", " + t.object + ")");
  }
  return join(groups, ", ");
}

KgMr parse_kg_paren(std::string_view text, std::string topic) {
  KgMr mr;
  mr.topic = std::move(topic);
  std::string_view s = trim(text);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  while (true) {
    skip_ws();
    if (i >= s.size() || s[i] != '(') {
      throw Error(ErrorKind::kSyntaxError, "expected '(' at offset " + std::to_string(i));
    }
    size_t close = s.find_first_of("()", i + 1);
    if (close == std::string_view::npos || s[close] != ')') {
      throw Error(ErrorKind::kSyntaxError, "unbalanced parentheses");
    }
    std::string_view group = s.substr(i + 1, close - i - 1);
    std::vector<std::string> parts = split(group, ",");
    if (parts.size() > 3) {
      throw Error(ErrorKind::kAmbiguousCommaSplit,
                  "group '(" + std::string(group) + ")' has " +
                      std::to_string(parts.size() - 1) + " commas");
    }
    if (parts.size() < 3) {
      throw Error(ErrorKind::kSyntaxError,
                  "group '(" + std::string(group) + ")' is not a triple");
    }
    Triple t{trim_copy(parts[0]), trim_copy(parts[1]), trim_copy(parts[2]), {}, {}};
    if (t.subject.empty() || t.relation.empty() || t.object.empty()) {
      throw Error(ErrorKind::kSyntaxError, "empty triple field");
    }
    mr.triples.push_back(std::move(t));
    i = close + 1;
    skip_ws();
    if (i == s.size()) break;
    if (s[i] != ',') {
      throw Error(ErrorKind::kSyntaxError, "expected ',' between triples");
    }
    ++i;
  }
  return mr;
}

std::string serialize_prompt_mr(const MeaningRepresentation &mr) {
  if (const auto *kg = std::get_if<KgMr>(&mr)) return serialize_kg_s2s(*kg);
  return serialize_viggo_qa(std::get<ViggoMr>(mr));
}

MeaningRepresentation parse_any_mr(std::string_view text,
                                   const std::string &topic) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorKind::kSyntaxError, "empty MR");
  if (s.front() == '(') return parse_kg_paren(s, topic);
  if (contains(s, "=")) {
    std::vector<std::string> fields = split(s, kPipe);
    if (split(fields[0], kEq).size() == 3) return parse_kg_s2s(s, topic);
    return parse_viggo_qa(s);
  }
  return parse_viggo_mr(s);
}

}  // namespace m2t

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

#include "m2t/lexicon.h"

#include <json.hpp>

#include "m2t/error.h"
#include "m2t/text.h"

namespace m2t {

using nlohmann::json;

namespace {

std::string fold(const std::string &s) { return to_lower_ascii(trim(s)); }

std::vector<std::string> with_head(const std::string &head,
                                   const std::vector<std::string> &rest) {
  std::vector<std::string> out = {head};
  for (const std::string &v : rest) {
    if (fold(v) != fold(head)) out.push_back(v);
  }
  return out;
}

std::vector<std::string> variant_list(const json &j, const std::string &where) {
  std::vector<std::string> out = j.get<std::vector<std::string>>();
  if (out.empty()) throw Error(ErrorKind::kConfigError, "lexicon: empty variants for " + where);
  for (const std::string &v : out) {
    if (trim(v).empty()) throw Error(ErrorKind::kConfigError, "lexicon: blank variant in " + where);
  }
  return out;
}

const json &section(const json &doc, const char *name) {
  static const json kEmpty = json::object();
  auto it = doc.find(name);
  return it == doc.end() ? kEmpty : *it;
}

}  // namespace

Lexicon Lexicon::from_json_text(const std::string &text) {
  Lexicon lex;
  try {
    json doc = json::parse(text);
    if (doc.value("format", "") != "m2t-lexicon" || doc.value("version", 0) != 1) {
      throw Error(ErrorKind::kConfigError, "lexicon: expected format m2t-lexicon version 1");
    }
    for (const auto &[k, v] : section(doc, "kg_objects").items()) {
      lex.objects_[fold(k)] = variant_list(v, k);
    }
    for (const auto &[attr, values] : section(doc, "slot_values").items()) {
      for (const auto &[k, v] : values.items()) {
        lex.values_[fold(attr)][fold(k)] = variant_list(v, attr + "." + k);
      }
    }
    for (const auto &[attr, values] : section(doc, "boolean_keywords").items()) {
      for (const auto &[k, v] : values.items()) {
        lex.booleans_[fold(attr)][fold(k)] = variant_list(v, attr + "." + k);
      }
    }
    for (const auto &[attr, v] : section(doc, "empty_keywords").items()) {
      lex.empty_[fold(attr)] = variant_list(v, attr);
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kConfigError, std::string("lexicon: ") + e.what());
  }
  return lex;
}

Lexicon Lexicon::load(const std::string &path) { return from_json_text(read_file(path)); }

Lexicon Lexicon::load_default() { return load(data_path("lexicon.json")); }

std::vector<std::string> Lexicon::object_variants(const std::string &object) const {
  auto it = objects_.find(fold(object));
  return with_head(object, it == objects_.end() ? std::vector<std::string>{} : it->second);
}

std::vector<std::string> Lexicon::value_variants(const std::string &attribute,
                                                 const std::string &value) const {
  auto a = values_.find(fold(attribute));
  if (a != values_.end()) {
    auto v = a->second.find(fold(value));
    if (v != a->second.end()) return with_head(value, v->second);
  }
  return {value};
}

bool Lexicon::is_boolean(const std::string &attribute) const {
  return booleans_.count(fold(attribute)) > 0;
}

std::vector<std::string> Lexicon::boolean_keywords(const std::string &attribute,
                                                   const std::string &value) const {
  auto a = booleans_.find(fold(attribute));
  if (a == booleans_.end()) return {};
  std::string v = fold(value);
  if (v == "true") v = "yes";
  if (v == "false") v = "no";
  auto it = a->second.find(v);
  return it == a->second.end() ? std::vector<std::string>{} : it->second;
}

std::vector<std::string> Lexicon::empty_keywords(const std::string &attribute) const {
  auto it = empty_.find(fold(attribute));
  if (it != empty_.end()) return it->second;
  std::string words = attribute;
  for (char &c : words) {
    if (c == '_') c = ' ';
  }
  if (starts_with(words, "has ")) words = words.substr(4);
  return {words};
}

bool Lexicon::has_object_entry(const std::string &object) const {
  return objects_.count(fold(object)) > 0;
}

bool Lexicon::has_value_entry(const std::string &attribute,
                              const std::string &value) const {
  auto a = values_.find(fold(attribute));
  return a != values_.end() && a->second.count(fold(value)) > 0;
}

}  // namespace m2t

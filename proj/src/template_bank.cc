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

#include "m2t/template_bank.h"

#include <json.hpp>
#include <map>
#include <set>
#include <algorithm>

#include "m2t/digest.h"
#include "m2t/error.h"
#include "m2t/text.h"

namespace m2t {

using nlohmann::json;

namespace {

struct Placeholder {
  bool is_subject;
  size_t index;  // 1-based
};

// Parses "{subject_2}" style names; returns false for anything else.
bool parse_placeholder(std::string_view name, Placeholder *out) {
  std::string_view digits;
  if (starts_with(name, "subject_")) {
    out->is_subject = true;
    digits = name.substr(8);
  } else if (starts_with(name, "object_")) {
    out->is_subject = false;
    digits = name.substr(7);
  } else {
    return false;
  }
  if (digits.empty()) return false;
  size_t v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<size_t>(c - '0');
  }
  out->index = v;
  return v >= 1;
}

std::vector<std::string> placeholder_names(const std::string &surface) {
  std::vector<std::string> names;
  size_t pos = 0;
  while ((pos = surface.find('{', pos)) != std::string::npos) {
    size_t end = surface.find('}', pos);
    if (end == std::string::npos) break;
    names.push_back(surface.substr(pos + 1, end - pos - 1));
    pos = end + 1;
  }
  return names;
}

bool links_hold(const Template &t, const KgMr &mr) {
  for (size_t i = 0; i < t.links.size(); ++i) {
    const std::string &link = t.links[i];
    if (link.empty()) continue;
    Placeholder ph{};
    if (!parse_placeholder(link, &ph) || ph.index > mr.triples.size()) return false;
    const Triple &src = mr.triples[ph.index - 1];
    const std::string &expected = ph.is_subject ? src.subject : src.object;
    if (mr.triples[i].subject != expected) return false;
  }
  return true;
}

}  // namespace

TemplateBank::TemplateBank(std::vector<Template> templates)
    : templates_(std::move(templates)) {
  validate();
}

TemplateBank TemplateBank::load(const std::string &path) {
  return from_json_text(read_file(path));
}

TemplateBank TemplateBank::load_default() {
  return load(data_path("templates.json"));
}

TemplateBank TemplateBank::from_json_text(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kConfigError, std::string("template bank: ") + e.what());
  }
  if (doc.value("format", "") != "m2t-templates" || doc.value("version", 0) != 1) {
    throw Error(ErrorKind::kConfigError, "template bank: bad format/version");
  }
  std::vector<Template> templates;
  for (const auto &j : doc.at("templates")) {
    Template t;
    t.id = j.at("id").get<std::string>();
    t.topic = j.at("topic").get<std::string>();
    t.relation_signature = j.at("relations").get<std::vector<std::string>>();
    t.links = j.value("links", std::vector<std::string>(t.relation_signature.size()));
    t.surface = j.at("surface").get<std::string>();
    t.paraphrase_group = j.at("paraphrase_group").get<std::string>();
    t.asks_question = j.value("asks_question", false);
    t.canonical = j.value("canonical", false);
    t.corpus = j.value("corpus", false);
    t.provenance = j.value("provenance", "");
    templates.push_back(std::move(t));
  }
  return TemplateBank(std::move(templates));
}

void TemplateBank::validate() const {
  std::set<std::string> ids;
  std::map<std::string, const Template *> first_of_group;
  for (const Template &t : templates_) {
    if (!ids.insert(t.id).second) {
      throw Error(ErrorKind::kConfigError, "duplicate template id " + t.id);
    }
    size_t arity = t.relation_signature.size();
    if (arity == 0) {
      throw Error(ErrorKind::kConfigError, t.id + ": empty relation signature");
    }
    if (t.links.size() != arity || !t.links[0].empty()) {
      throw Error(ErrorKind::kConfigError, t.id + ": links must match the signature");
    }
    std::vector<bool> object_used(arity + 1, false);
    for (const std::string &name : placeholder_names(t.surface)) {
      Placeholder ph{};
      if (!parse_placeholder(name, &ph) || ph.index > arity) {
        throw Error(ErrorKind::kConfigError,
                    t.id + ": placeholder {" + name + "} is not bound by the signature");
      }
      if (!ph.is_subject) object_used[ph.index] = true;
    }
    for (size_t i = 1; i <= arity; ++i) {
      if (!object_used[i]) {
        throw Error(ErrorKind::kConfigError,
                    t.id + ": {object_" + std::to_string(i) + "} never realized");
      }
    }
    auto [it, inserted] = first_of_group.emplace(t.paraphrase_group, &t);
    if (!inserted && (it->second->relation_signature != t.relation_signature ||
                      it->second->links != t.links)) {
      throw Error(ErrorKind::kConfigError,
                  t.id + ": paraphrase group " + t.paraphrase_group +
                      " mixes relation signatures");
    }
  }
}

std::vector<std::string> TemplateBank::corpus_categories() const {
  std::vector<std::string> out;
  for (const Template &t : templates_) {
    if (!t.corpus) continue;
    if (std::find(out.begin(), out.end(), t.paraphrase_group) == out.end()) {
      out.push_back(t.paraphrase_group);
    }
  }
  return out;
}

std::vector<const Template *> TemplateBank::group(
    const std::string &paraphrase_group) const {
  std::vector<const Template *> out;
  for (const Template &t : templates_) {
    if (t.paraphrase_group == paraphrase_group) out.push_back(&t);
  }
  return out;
}

std::vector<const Template *> TemplateBank::matching(const KgMr &mr) const {
  std::vector<std::string> signature;
  for (const Triple &t : mr.triples) signature.push_back(t.relation);
  std::vector<const Template *> out;
  for (const Template &t : templates_) {
    if (t.relation_signature == signature && links_hold(t, mr)) out.push_back(&t);
  }
  return out;
}

std::string fill_template(const Template &tmpl, const KgMr &mr) {
  std::string out;
  const std::string &s = tmpl.surface;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t open = s.find('{', pos);
    if (open == std::string::npos) {
      out.append(s, pos, std::string::npos);
      break;
    }
    size_t close = s.find('}', open);
    out.append(s, pos, open - pos);
    Placeholder ph{};
    if (close == std::string::npos ||
        !parse_placeholder(std::string_view(s).substr(open + 1, close - open - 1), &ph) ||
        ph.index > mr.triples.size()) {
      throw Error(ErrorKind::kConfigError, tmpl.id + ": bad placeholder");
    }
    const Triple &t = mr.triples[ph.index - 1];
    out += ph.is_subject ? t.subject : t.object;
    pos = close + 1;
  }
  return out;
}

std::string realize(const KgMr &mr, const TemplateBank &bank,
                    uint64_t choice_seed, const Template **chosen) {
  std::vector<const Template *> candidates = bank.matching(mr);
  if (candidates.empty()) {
    std::vector<std::string> signature;
    for (const Triple &t : mr.triples) signature.push_back(t.relation);
    throw Error(ErrorKind::kNoTemplateForSignature, "[" + join(signature, ", ") + "]");
  }
  const Template *lead = candidates.front();
  for (const Template *t : candidates) {
    if (t->topic == mr.topic) {
      lead = t;
      break;
    }
  }
  const std::string &group = lead->paraphrase_group;
  std::vector<const Template *> paraphrases;
  for (const Template *t : candidates) {
    if (t->paraphrase_group == group) paraphrases.push_back(t);
  }
  SplitMix64 rng(choice_seed);
  const Template *pick = paraphrases[rng.below(paraphrases.size())];
  if (chosen != nullptr) *chosen = pick;
  return fill_template(*pick, mr);
}

}  // namespace m2t

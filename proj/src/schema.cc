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

#include "m2t/schema.h"

#include <json.hpp>

#include "m2t/error.h"
#include "m2t/text.h"

namespace m2t {

using nlohmann::json;

namespace {

ValueType parse_value_type(const std::string &s) {
  if (s == "text") return ValueType::kText;
  if (s == "enumerated") return ValueType::kEnumerated;
  if (s == "boolean") return ValueType::kBoolean;
  if (s == "year") return ValueType::kYear;
  if (s == "list") return ValueType::kList;
  throw Error(ErrorKind::kConfigError, "unknown value type '" + s + "'");
}

}  // namespace

std::string_view value_type_name(ValueType type) {
  switch (type) {
    case ValueType::kText: return "text";
    case ValueType::kEnumerated: return "enumerated";
    case ValueType::kBoolean: return "boolean";
    case ValueType::kYear: return "year";
    case ValueType::kList: return "list";
  }
  return "text";
}

MrSchema MrSchema::load(const std::string &path) {
  return from_json_text(read_file(path));
}

MrSchema MrSchema::load_default() { return load(data_path("schema.json")); }

MrSchema MrSchema::from_json_text(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kConfigError, std::string("schema: ") + e.what());
  }
  if (doc.value("format", "") != "m2t-schema") {
    throw Error(ErrorKind::kConfigError, "schema: missing format tag");
  }
  if (doc.value("version", 0) != 1) {
    throw Error(ErrorKind::kConfigError, "schema: unsupported version");
  }
  MrSchema schema;
  for (const auto &da : doc.at("dialogue_acts")) {
    schema.das_.push_back({da.at("name").get<std::string>(),
                           da.value("provenance", "")});
  }
  for (const auto &attr : doc.at("attributes")) {
    AttributeSpec spec;
    spec.name = attr.at("name").get<std::string>();
    spec.type = parse_value_type(attr.value("type", "text"));
    spec.values = attr.value("values", std::vector<std::string>{});
    spec.provenance = attr.value("provenance", "");
    schema.attributes_.push_back(std::move(spec));
  }
  if (doc.contains("kg_relations")) {
    for (const auto &[topic, list] : doc.at("kg_relations").items()) {
      auto &out = schema.relations_[topic];
      for (const auto &rel : list) {
        RelationSpec spec;
        spec.name = rel.at("name").get<std::string>();
        spec.topic = topic;
        spec.table_name = rel.value("table_name", spec.name);
        if (rel.contains("pid")) spec.property_id = rel.at("pid").get<std::string>();
        spec.inverse = rel.value("inverse", false);
        spec.novel = rel.value("novel", false);
        spec.verified = rel.value("verified", false);
        spec.provenance = rel.value("provenance", "published");
        out.push_back(std::move(spec));
      }
    }
  }
  return schema;
}

std::string MrSchema::to_json_text() const {
  json doc;
  doc["format"] = "m2t-schema";
  doc["version"] = 1;
  doc["dialogue_acts"] = json::array();
  for (const auto &da : das_) {
    doc["dialogue_acts"].push_back({{"name", da.name}, {"provenance", da.provenance}});
  }
  doc["attributes"] = json::array();
  for (const auto &a : attributes_) {
    json j = {{"name", a.name},
              {"type", std::string(value_type_name(a.type))},
              {"provenance", a.provenance}};
    if (!a.values.empty()) j["values"] = a.values;
    doc["attributes"].push_back(std::move(j));
  }
  doc["kg_relations"] = json::object();
  for (const auto &[topic, list] : relations_) {
    json arr = json::array();
    for (const auto &r : list) {
      json j = {{"name", r.name},
                {"table_name", r.table_name},
                {"novel", r.novel},
                {"verified", r.verified},
                {"provenance", r.provenance}};
      if (r.property_id) j["pid"] = *r.property_id;
      if (r.inverse) j["inverse"] = true;
      arr.push_back(std::move(j));
    }
    doc["kg_relations"][topic] = std::move(arr);
  }
  return doc.dump(2) + "\n";
}

const std::vector<RelationSpec> &MrSchema::relations(
    const std::string &topic) const {
  static const std::vector<RelationSpec> kEmpty;
  auto it = relations_.find(topic);
  return it == relations_.end() ? kEmpty : it->second;
}

std::vector<std::string> MrSchema::topics() const {
  std::vector<std::string> out;
  for (const auto &[topic, _] : relations_) out.push_back(topic);
  return out;
}

bool MrSchema::has_dialogue_act(const std::string &name) const {
  for (const auto &da : das_) {
    if (da.name == name) return true;
  }
  return false;
}

const AttributeSpec *MrSchema::attribute(const std::string &name) const {
  for (const auto &a : attributes_) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

const RelationSpec *MrSchema::relation(const std::string &topic,
                                       const std::string &name) const {
  for (const auto &r : relations(topic)) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const RelationSpec *MrSchema::find_relation(const std::string &name) const {
  for (const auto &[topic, list] : relations_) {
    for (const auto &r : list) {
      if (r.name == name) return &r;
    }
  }
  return nullptr;
}

void MrSchema::validate(const ViggoMr &mr) const {
  if (!has_dialogue_act(mr.dialogue_act)) {
    throw Error(ErrorKind::kUnknownDialogueAct, mr.dialogue_act);
  }
  for (const Slot &slot : mr.slots) {
    if (attribute(slot.attribute) == nullptr) {
      throw Error(ErrorKind::kUnknownAttribute, slot.attribute);
    }
  }
}

void MrSchema::validate(const KgMr &mr) const {
  if (mr.topic == kTopicOther) return;
  if (relations_.find(mr.topic) == relations_.end()) {
    throw Error(ErrorKind::kValidationError, "unknown topic " + mr.topic);
  }
  for (const Triple &t : mr.triples) {
    if (relation(mr.topic, t.relation) == nullptr) {
      throw Error(ErrorKind::kUnknownRelation,
                  "'" + t.relation + "' is not a " + mr.topic + " relation");
    }
  }
}

std::vector<std::string> MrSchema::extend_from(
    const std::vector<ViggoMr> &corpus) {
  std::vector<std::string> added;
  for (const ViggoMr &mr : corpus) {
    if (!has_dialogue_act(mr.dialogue_act)) {
      das_.push_back({mr.dialogue_act, "corpus"});
      added.push_back(mr.dialogue_act);
    }
    for (const Slot &slot : mr.slots) {
      if (attribute(slot.attribute) == nullptr) {
        AttributeSpec spec;
        spec.name = slot.attribute;
        spec.provenance = "corpus";
        attributes_.push_back(std::move(spec));
        added.push_back(slot.attribute);
      }
    }
  }
  return added;
}

}  // namespace m2t

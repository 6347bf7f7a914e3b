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

#ifndef M2T_SCHEMA_H_
#define M2T_SCHEMA_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "m2t/mr.h"

namespace m2t {

enum class ValueType { kText, kEnumerated, kBoolean, kYear, kList };

struct DialogueActSpec {
  std::string name;
  std::string provenance;  // "published" or "corpus"
};

struct AttributeSpec {
  std::string name;
  ValueType type = ValueType::kText;
  std::vector<std::string> values;  // kEnumerated only
  std::string provenance;
};

struct RelationSpec {
  std::string name;
  std::string topic;
  std::string table_name;  // display spelling, when different
  std::optional<std::string> property_id;
  bool inverse = false;    // the KG property points object -> subject
  bool novel = false;
  bool verified = false;   // property ID mapping confirmed
  std::string provenance;
};

// Closed vocabulary for both MR families. Loaded from a versioned JSON file
// (data/schema.json); see docs in README for the format.
class MrSchema {
 public:
  static MrSchema load(const std::string &path);
  static MrSchema load_default();
  static MrSchema from_json_text(const std::string &text);
  std::string to_json_text() const;

  const std::vector<DialogueActSpec> &dialogue_acts() const { return das_; }
  const std::vector<AttributeSpec> &attributes() const { return attributes_; }
  const std::vector<RelationSpec> &relations(const std::string &topic) const;
  std::vector<std::string> topics() const;

  bool has_dialogue_act(const std::string &name) const;
  const AttributeSpec *attribute(const std::string &name) const;
  const RelationSpec *relation(const std::string &topic,
                               const std::string &name) const;
  // First topic (in topics() order) defining `name`.
  const RelationSpec *find_relation(const std::string &name) const;

  // Strict-mode checks. Throw UnknownDialogueAct / UnknownAttribute /
  // UnknownRelation.
  void validate(const ViggoMr &mr) const;
  void validate(const KgMr &mr) const;

  // Closes the schema over a corpus: adds every unseen DA and attribute
  // (provenance "corpus", type text) and returns the added names.
  std::vector<std::string> extend_from(const std::vector<ViggoMr> &corpus);

 private:
  std::vector<DialogueActSpec> das_;
  std::vector<AttributeSpec> attributes_;
  std::map<std::string, std::vector<RelationSpec>> relations_;
};

std::string_view value_type_name(ValueType type);

}  // namespace m2t

#endif  // M2T_SCHEMA_H_

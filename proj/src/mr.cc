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

#include "m2t/mr.h"

#include <set>

#include "m2t/error.h"
#include "m2t/text.h"

namespace m2t {

const Slot *ViggoMr::find(const std::string &attribute) const {
  for (const Slot &slot : slots) {
    if (slot.attribute == attribute) return &slot;
  }
  return nullptr;
}

size_t content_unit_count(const MeaningRepresentation &mr) {
  if (const auto *kg = std::get_if<KgMr>(&mr)) return kg->triples.size();
  return std::get<ViggoMr>(mr).slots.size();
}

bool is_kg(const MeaningRepresentation &mr) {
  return std::holds_alternative<KgMr>(mr);
}

const std::vector<std::string> &kg_topics() {
  static const std::vector<std::string> kTopics = {"movies", "music", "sports",
                                                   "tv"};
  return kTopics;
}

void check_invariants(const KgMr &mr) {
  if (mr.triples.empty()) {
    throw Error(ErrorKind::kSyntaxError, "KG MR needs at least one triple");
  }
  for (const Triple &t : mr.triples) {
    for (const std::string *field : {&t.subject, &t.relation, &t.object}) {
      if (trim(*field).empty()) {
        throw Error(ErrorKind::kSyntaxError, "empty triple field");
      }
    }
  }
}

void check_invariants(const ViggoMr &mr) {
  if (trim(mr.dialogue_act).empty()) {
    throw Error(ErrorKind::kSyntaxError, "missing dialogue act");
  }
  std::set<std::string> seen;
  for (const Slot &slot : mr.slots) {
    if (trim(slot.attribute).empty()) {
      throw Error(ErrorKind::kSyntaxError, "empty attribute name");
    }
    if (!seen.insert(slot.attribute).second) {
      throw Error(ErrorKind::kDuplicateAttribute, slot.attribute);
    }
    for (const std::string &v : slot.values) {
      if (trim(v).empty()) {
        throw Error(ErrorKind::kSyntaxError,
                    "empty value in slot " + slot.attribute);
      }
    }
  }
}

}  // namespace m2t

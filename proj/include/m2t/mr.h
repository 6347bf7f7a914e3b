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

#ifndef M2T_MR_H_
#define M2T_MR_H_

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace m2t {

// One (subject, relation, object) knowledge-graph fact.
struct Triple {
  std::string subject;
  std::string relation;
  std::string object;
  std::optional<std::string> subject_id;
  std::optional<std::string> object_id;

  // Equality covers the labels only; IDs are carried, not compared.
  friend bool operator==(const Triple &a, const Triple &b) {
    return a.subject == b.subject && a.relation == b.relation &&
           a.object == b.object;
  }
};

inline constexpr const char *kTopicOther = "other";

// Ordered triple list plus topic. Order is significant.
struct KgMr {
  std::vector<Triple> triples;
  std::string topic = kTopicOther;

  friend bool operator==(const KgMr &a, const KgMr &b) = default;
};

struct Slot {
  std::string attribute;
  std::vector<std::string> values;  // may be empty, e.g. has_multiplayer[]

  friend bool operator==(const Slot &a, const Slot &b) = default;
};

// Dialogue act plus ordered slots; each attribute appears at most once.
struct ViggoMr {
  std::string dialogue_act;
  std::vector<Slot> slots;

  friend bool operator==(const ViggoMr &a, const ViggoMr &b) = default;

  const Slot *find(const std::string &attribute) const;
};

using MeaningRepresentation = std::variant<KgMr, ViggoMr>;

// Number of units semantic accuracy is computed over: triples for KG MRs,
// slots for Viggo MRs (the dialogue act itself is not counted).
size_t content_unit_count(const MeaningRepresentation &mr);

bool is_kg(const MeaningRepresentation &mr);

// The four KG topics, in report order.
const std::vector<std::string> &kg_topics();

// Checks the structural invariants (non-empty trimmed fields, at least one
// triple, unique attributes). Throws Error.
void check_invariants(const KgMr &mr);
void check_invariants(const ViggoMr &mr);

}  // namespace m2t

#endif  // M2T_MR_H_

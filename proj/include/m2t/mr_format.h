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

#ifndef M2T_MR_FORMAT_H_
#define M2T_MR_FORMAT_H_

#include <string>
#include <string_view>
#include <vector>

#include "m2t/mr.h"
#include "m2t/schema.h"

namespace m2t {

// Textual forms of the two MR families.
//
//   Viggo structured:  give_opinion(name[SpellForce 3], genres[a, b], x[])
//   Viggo QA (pipe):   confirm = yes | name = Tony Hawk's Pro Skater 3
//   KG S2S (pipe):     Starship = song = We Built This City | ...
//   KG paren:          (The Beach Boys, song, Cotton Fields), (...)
//
// Reserved delimiters are never escaped. Values that contain them are
// rejected at serialization time with kEscapingRequired. Parsers trim ASCII
// whitespace around tokens and never fold case. Passing a schema turns on
// strict validation of dialogue acts, attributes and relations.

ViggoMr parse_viggo_mr(std::string_view text, const MrSchema *strict = nullptr);
std::string serialize_viggo_mr(const ViggoMr &mr);

ViggoMr parse_viggo_qa(std::string_view text, const MrSchema *strict = nullptr);
std::string serialize_viggo_qa(const ViggoMr &mr);

KgMr parse_kg_s2s(std::string_view text, std::string topic = kTopicOther);
std::string serialize_kg_s2s(const KgMr &mr);

KgMr parse_kg_paren(std::string_view text, std::string topic = kTopicOther);
std::string serialize_kg_paren(const KgMr &mr);

// Splits a slot's value list on commas. A comma between two digits is a
// thousands separator ("Warhammer 40,000") and does not split.
std::vector<std::string> split_slot_values(std::string_view text);

// The single-line MR form used inside prompts: KG S2S for KG MRs, the pipe
// form for Viggo MRs.
std::string serialize_prompt_mr(const MeaningRepresentation &mr);

// Parses any of the four textual forms, detecting which one applies. A
// leading "[PROMPT]:"-style marker is not stripped here. Throws Error.
MeaningRepresentation parse_any_mr(std::string_view text,
                                   const std::string &topic = kTopicOther);

}  // namespace m2t

#endif  // M2T_MR_FORMAT_H_

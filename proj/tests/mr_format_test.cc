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

#include <gtest/gtest.h>

#include "m2t/corpus.h"
#include "m2t/error.h"
#include "m2t/schema.h"
#include "m2t/text.h"
#include "test_support.h"

namespace m2t {
namespace {

ErrorKind kind_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorKind::kIoError;
}

TEST(ViggoMrTest, ParsesStructuredForm) {
  ViggoMr mr = parse_viggo_mr(
      "give_opinion(name[SpellForce 3], rating[poor], genres[real-time strategy, role-playing], "
      "player_perspective[bird view])");
  EXPECT_EQ(mr.dialogue_act, "give_opinion");
  ASSERT_EQ(mr.slots.size(), 4u);
  EXPECT_EQ(mr.slots[2].attribute, "genres");
  EXPECT_EQ(mr.slots[2].values,
            (std::vector<std::string>{"real-time strategy", "role-playing"}));
  EXPECT_EQ(serialize_viggo_mr(mr),
            "give_opinion(name[SpellForce 3], rating[poor], genres[real-time strategy, "
            "role-playing], player_perspective[bird view])");
}

TEST(ViggoMrTest, EmptySlotAndThousandsSeparator) {
  ViggoMr mr = parse_viggo_mr("request_attribute(has_multiplayer[])");
  ASSERT_EQ(mr.slots.size(), 1u);
  EXPECT_TRUE(mr.slots[0].values.empty());
  ViggoMr w = parse_viggo_mr("inform(name[Warhammer 40,000: Dawn of War], release_year[2004])");
  EXPECT_EQ(w.slots[0].values, std::vector<std::string>{"Warhammer 40,000: Dawn of War"});
}

TEST(ViggoMrTest, ParenthesesInsideValues) {
  ViggoMr mr = parse_viggo_mr("inform(name[Portal], esrb[E 10+ (for Everyone 10 and Older)])");
  EXPECT_EQ(mr.slots[1].values[0], "E 10+ (for Everyone 10 and Older)");
  EXPECT_EQ(parse_viggo_mr(serialize_viggo_mr(mr)), mr);
}

TEST(ViggoMrTest, Errors) {
  EXPECT_EQ(kind_of([] { parse_viggo_mr("inform(name[A], name[B])"); }),
            ErrorKind::kDuplicateAttribute);
  EXPECT_EQ(kind_of([] { parse_viggo_mr("inform name[A]"); }), ErrorKind::kSyntaxError);
  EXPECT_EQ(kind_of([] { parse_viggo_mr("inform(name[A]"); }), ErrorKind::kSyntaxError);
  EXPECT_EQ(kind_of([] { parse_viggo_mr("inform(name[A], )"); }), ErrorKind::kSyntaxError);
  MrSchema schema = MrSchema::load_default();
  EXPECT_EQ(kind_of([&] { parse_viggo_mr("chitchat(name[A])", &schema); }),
            ErrorKind::kUnknownDialogueAct);
  EXPECT_EQ(kind_of([&] { parse_viggo_mr("inform(colour[red])", &schema); }),
            ErrorKind::kUnknownAttribute);
  ViggoMr bad{"inform", {{"name", {"a, b"}}}};
  EXPECT_EQ(kind_of([&] { serialize_viggo_mr(bad); }), ErrorKind::kEscapingRequired);
  ViggoMr bracket{"inform", {{"name", {"a[1]"}}}};
  EXPECT_EQ(kind_of([&] { serialize_viggo_mr(bracket); }), ErrorKind::kEscapingRequired);
}

TEST(ViggoQaTest, PipeForm) {
  ViggoMr mr = parse_viggo_qa(
      "confirm = yes | name = Tony Hawk's Pro Skater 3 | release_year = 2001 | genres = sport");
  EXPECT_EQ(mr.dialogue_act, "confirm");
  EXPECT_EQ(mr.slots.size(), 3u);
  EXPECT_EQ(serialize_viggo_qa(mr),
            "confirm = yes | name = Tony Hawk's Pro Skater 3 | release_year = 2001 | genres = sport");
  EXPECT_EQ(kind_of([] { parse_viggo_qa("confirm = no | name = X"); }), ErrorKind::kSyntaxError);
  EXPECT_EQ(kind_of([] { parse_viggo_qa("confirm = yes | name"); }), ErrorKind::kSyntaxError);
}

TEST(KgMrTest, S2sAndParenForms) {
  KgMr mr = parse_kg_s2s(
      "Starship = song = We Built This City | We Built This City = genre = pop rock", "music");
  ASSERT_EQ(mr.triples.size(), 2u);
  EXPECT_EQ(mr.triples[1].object, "pop rock");
  EXPECT_EQ(mr.topic, "music");
  EXPECT_EQ(serialize_kg_paren(mr),
            "(Starship, song, We Built This City), (We Built This City, genre, pop rock)");
  EXPECT_EQ(parse_kg_paren(serialize_kg_paren(mr), "music"), mr);
  EXPECT_EQ(kind_of([] { parse_kg_s2s("Starship = song"); }), ErrorKind::kSyntaxError);
  EXPECT_EQ(kind_of([] { parse_kg_paren("(A, b, c, d)"); }), ErrorKind::kAmbiguousCommaSplit);
  EXPECT_EQ(kind_of([] { parse_kg_paren("(A, b)"); }), ErrorKind::kSyntaxError);
  KgMr commas{{{"Warhammer 40,000", "genre", "strategy", {}, {}}}, "other"};
  EXPECT_EQ(kind_of([&] { serialize_kg_paren(commas); }), ErrorKind::kEscapingRequired);
  EXPECT_EQ(parse_kg_s2s(serialize_kg_s2s(commas)), commas);
}

TEST(ParseAnyTest, DetectsForm) {
  EXPECT_TRUE(is_kg(parse_any_mr("(A, b, c)")));
  EXPECT_TRUE(is_kg(parse_any_mr("A = b = c")));
  EXPECT_FALSE(is_kg(parse_any_mr("inform = yes | name = X")));
  EXPECT_FALSE(is_kg(parse_any_mr("inform(name[X])")));
  EXPECT_EQ(kind_of([] { parse_any_mr("   "); }), ErrorKind::kSyntaxError);
}

TEST(SplitSlotValuesTest, ThousandsOnlyBetweenDigits) {
  EXPECT_EQ(split_slot_values("1,000, 2,000"), (std::vector<std::string>{"1,000", "2,000"}));
  EXPECT_EQ(split_slot_values("a,b"), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(split_slot_values("  ").empty());
}

// Property: every schema-valid MR survives serialize -> parse in each form.
TEST(RoundTripProperty, FuzzedViggoAndKg) {
  MrSchema schema = MrSchema::load_default();
  SplitMix64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    ViggoMr mr = testing::fuzz_viggo_mr(schema, rng);
    ViggoMr a = parse_viggo_mr(serialize_viggo_mr(mr), &schema);
    ViggoMr b = parse_viggo_qa(serialize_viggo_qa(mr), &schema);
    ASSERT_EQ(a, mr) << serialize_viggo_mr(mr);
    ASSERT_EQ(b, mr) << serialize_viggo_qa(mr);
    KgMr kg = testing::fuzz_kg_mr(schema, rng);
    ASSERT_EQ(parse_kg_s2s(serialize_kg_s2s(kg), kg.topic), kg);
    ASSERT_EQ(parse_kg_paren(serialize_kg_paren(kg), kg.topic), kg);
  }
}

TEST(RoundTripProperty, ShippedViggoCorpus) {
  MrSchema schema = MrSchema::load_default();
  std::vector<CorpusRecord> records = load_viggo_dir(data_path("viggo"), &schema);
  ASSERT_FALSE(records.empty());
  for (const CorpusRecord &r : records) {
    const ViggoMr &mr = std::get<ViggoMr>(r.mr);
    ASSERT_EQ(parse_viggo_mr(serialize_viggo_mr(mr)), mr) << r.key;
    ASSERT_EQ(parse_viggo_qa(serialize_viggo_qa(mr)), mr) << r.key;
  }
}

}  // namespace
}  // namespace m2t

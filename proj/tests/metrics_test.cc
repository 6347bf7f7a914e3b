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

#include <gtest/gtest.h>

#include "m2t/corpus.h"
#include "m2t/mr_format.h"
#include "m2t/normalize.h"
#include "oracles.h"
#include "test_support.h"

namespace m2t {
namespace {

MeaningRepresentation fixture_mr(const testing::AlignerFixture &f) {
  if (f.topic == kTopicVideoGames) return parse_viggo_mr(f.mr);
  return parse_kg_paren(f.mr, f.topic);
}

TEST(SemanticAccuracyTest, HandLabeledFixtures) {
  Lexicon lexicon = Lexicon::load_default();
  for (const testing::AlignerFixture &f : testing::aligner_fixtures()) {
    AlignmentReport r = semantic_accuracy(fixture_mr(f), f.text, lexicon);
    EXPECT_EQ(r.realized, f.realized) << f.name;
    EXPECT_EQ(r.total, f.total) << f.name;
  }
}

TEST(SemanticAccuracyTest, ReportsWhichTriplesAreMissing) {
  Lexicon lexicon = Lexicon::load_default();
  const auto &m1 = testing::aligner_fixtures()[0];
  AlignmentReport r = semantic_accuracy(fixture_mr(m1), m1.text, lexicon);
  ASSERT_EQ(r.per_slot.size(), 3u);
  EXPECT_TRUE(r.per_slot[0].matched);
  EXPECT_FALSE(r.per_slot[1].matched);
  EXPECT_TRUE(r.per_slot[2].matched);
  EXPECT_EQ(r.per_slot[1].key,
            "BAFTA Award for Best Short Film|show|47th British Academy Film Awards");
  EXPECT_EQ(*r.per_slot[0].matched_span, "bafta award for best short film");
  const auto &m2 = testing::aligner_fixtures()[1];
  r = semantic_accuracy(fixture_mr(m2), m2.text, lexicon);
  EXPECT_FALSE(r.per_slot[0].matched);
  EXPECT_TRUE(r.per_slot[1].matched);
  EXPECT_DOUBLE_EQ(r.ratio, 0.5);
}

TEST(SemanticAccuracyTest, MatchesSubstringOracle) {
  Lexicon lexicon;
  for (const testing::SyntheticPair &p : testing::synthetic_pairs(500, 17)) {
    size_t expected = testing::substring_oracle(p.mr, p.text);
    ASSERT_GE(expected, p.chosen);
    AlignmentReport r = semantic_accuracy(p.mr, p.text, lexicon);
    ASSERT_EQ(r.realized, expected) << p.text;
    ASSERT_EQ(r.total, p.mr.triples.size());
  }
}

TEST(SemanticAccuracyTest, AppendingAnObjectNeverLowersTheCount) {
  Lexicon lexicon = Lexicon::load_default();
  for (const testing::SyntheticPair &p : testing::synthetic_pairs(200, 5)) {
    size_t before = semantic_accuracy(p.mr, p.text, lexicon).realized;
    for (const Triple &t : p.mr.triples) {
      AlignmentReport after = semantic_accuracy(p.mr, p.text + " " + t.object, lexicon);
      EXPECT_GE(after.realized, before);
      EXPECT_GE(after.ratio, 0.0);
      EXPECT_LE(after.ratio, 1.0);
    }
  }
}

TEST(SemanticAccuracyTest, EdgeCases) {
  Lexicon lexicon = Lexicon::load_default();
  KgMr mr = parse_kg_s2s("Scream = cast member = Liev Schreiber", "movies");
  EXPECT_EQ(semantic_accuracy(mr, "", lexicon).realized, 0u);
  EXPECT_DOUBLE_EQ(semantic_accuracy(ViggoMr{"request_explanation", {}}, "Why?", lexicon).ratio,
                   1.0);
  // Whole words only.
  KgMr end = parse_kg_s2s("Len Ford = position played on team = end", "sports");
  EXPECT_EQ(semantic_accuracy(end, "He played until the weekend.", lexicon).realized, 0u);
  // Years match spelled out.
  KgMr year = parse_kg_s2s("Cotton Fields = date = 1970", "music");
  EXPECT_EQ(semantic_accuracy(year, "It came out in nineteen seventy.", lexicon).realized, 1u);
  // Unknown objects fall back to verbatim matching with a warning.
  KgMr odd = parse_kg_s2s("Zorblax = genre = glitch polka", "music");
  AlignmentReport r = semantic_accuracy(odd, "Zorblax plays glitch-polka", lexicon);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(SemanticAccuracyTest, ViggoSlotsNeedEveryValue) {
  Lexicon lexicon = Lexicon::load_default();
  ViggoMr mr = parse_viggo_mr("inform(name[Halo 3], platforms[Xbox, PC])");
  EXPECT_EQ(semantic_accuracy(mr, "Halo 3 is on Xbox.", lexicon).realized, 1u);
  EXPECT_EQ(semantic_accuracy(mr, "Halo 3 is on Xbox and PC.", lexicon).realized, 2u);
  ViggoMr empty = parse_viggo_mr("request_attribute(has_multiplayer[])");
  EXPECT_EQ(semantic_accuracy(empty, "Do you like multiplayer games?", lexicon).realized, 1u);
}

TEST(DialogueActTest, RuleVerdicts) {
  EXPECT_EQ(dialogue_act_match("confirm",
                               "Gotcha! So you're referring to the Tony Hawk's Pro Skater 3 "
                               "sports game, which was released in 2001?"),
            DaVerdict::kMatch);
  EXPECT_EQ(dialogue_act_match("inform", ""), DaVerdict::kMismatch);
  EXPECT_EQ(dialogue_act_match("verify_attribute", testing::aligner_fixtures()[5].text),
            DaVerdict::kMatch);
  EXPECT_EQ(dialogue_act_match("confirm", "Halo 3 came out in 2007."), DaVerdict::kMismatch);
  EXPECT_EQ(dialogue_act_match("confirm", "Is that Halo 3?"), DaVerdict::kUncertain);
  EXPECT_EQ(dialogue_act_match("request", "Halo 3 is great."), DaVerdict::kMismatch);
  EXPECT_EQ(dialogue_act_match("give_opinion", "Halo 3 is great. Have you played it?"),
            DaVerdict::kMatch);
  EXPECT_EQ(dialogue_act_match("give_opinion", "Have you played it? Halo 3 is great."),
            DaVerdict::kUncertain);
  EXPECT_EQ(dialogue_act_match("recommend", "Have you played it?"), DaVerdict::kMismatch);
  EXPECT_EQ(verdict_name(DaVerdict::kUncertain), "uncertain");
}

TEST(QuestionAddedTest, LicensingRules) {
  KgMr kg = parse_kg_s2s("Babbo = eatType = bistro");
  EXPECT_TRUE(question_added(
      kg, "Babbo is an outstanding French bistro in NY.  Do you like French food?"));
  EXPECT_FALSE(question_added(kg, "Babbo is a bistro."));
  ViggoMr confirm = parse_viggo_mr("confirm(name[Halo 3])");
  EXPECT_FALSE(question_added(confirm, "Do you mean Halo 3?"));
  EXPECT_TRUE(question_added(confirm, "Do you mean Halo 3? Do you like it?"));
  ViggoMr inform = parse_viggo_mr("inform(name[Halo 3])");
  EXPECT_TRUE(question_added(inform, "Halo 3 is fun. Want to play?"));
  EXPECT_FALSE(question_added(inform, "Is it fun? Halo 3 is fun."));
  EXPECT_FALSE(licenses_question(kg));
  EXPECT_TRUE(licenses_question(confirm));
}

TEST(WordCountTest, Whitespace) {
  EXPECT_EQ(word_count(""), 0u);
  EXPECT_EQ(word_count("a b  c"), 3u);
  EXPECT_EQ(word_count("  lead\tand\ntrail  "), 3u);
  EXPECT_EQ(word_count("Gotcha! So you're referring to the Tony Hawk's Pro Skater 3 sports "
                       "game, which was released in 2001?"),
            18u);
}

TEST(SentenceTest, SplitsOnTerminalPunctuation) {
  EXPECT_EQ(split_sentences("One. Two?! Three"),
            (std::vector<std::string>{"One.", "Two?!", "Three"}));
  EXPECT_EQ(split_sentences("Version 2.5 is out."), std::vector<std::string>{"Version 2.5 is out."});
  EXPECT_TRUE(is_question("Really?\""));
  EXPECT_FALSE(is_question("Really."));
}

TEST(NormalizeTest, FoldsCaseAndPunctuation) {
  EXPECT_EQ(match_tokens("Third-person, Bird's-eye VIEW!"),
            (std::vector<std::string>{"third", "person", "bird's", "eye", "view"}));
  std::vector<std::string> hay = match_tokens("a b c d");
  size_t at = 0;
  EXPECT_TRUE(phrase_occurs(hay, {"c", "d"}, &at));
  EXPECT_EQ(at, 2u);
  EXPECT_FALSE(phrase_occurs(hay, {"b", "d"}));
}

}  // namespace
}  // namespace m2t

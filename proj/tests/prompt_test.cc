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


#include "m2t/prompt.h"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "m2t/corpus.h"
#include "m2t/error.h"
#include "m2t/mr_format.h"
#include "m2t/text.h"
#include "test_support.h"

namespace m2t {
namespace {

const char *kBabbo = "name=Babbo | eatType = bistro | food = French | customerRating = outstanding";

std::vector<Exemplar> kg_exemplars() {
  KgMr song = parse_kg_paren(
      "(Starship, song, We Built This City), (We Built This City, genre, pop rock)", "music");
  KgMr cast = parse_kg_paren("(Scream, cast member, Liev Schreiber)", "movies");
  return {{"", serialize_prompt_mr(song),
           "Starship plays pop rock like the song We Built This City.  Do you like that genre?"},
          {"", serialize_prompt_mr(cast),
           "Liev Schreiber was really good in Scream, don't you agree?."}};
}

Exemplar tony_hawk() {
  ViggoMr mr = parse_viggo_mr(
      "confirm(name[Tony Hawk's Pro Skater 3], release_year[2001], genres[sport])");
  return {"", serialize_prompt_mr(mr),
          "Gotcha! So you're referring to the Tony Hawk's Pro Skater 3 sports game, which "
          "was released in 2001?"};
}

TEST(PromptTest, S2sMatchesGolden) {
  PromptBundle b = build_s2s(kg_exemplars(), kBabbo);
  EXPECT_EQ(b.rendered, read_file(testing::test_path("fixtures/golden/s2s_prompt.txt")));
  EXPECT_EQ(b.stop_sequences, std::vector<std::string>{"\n\n"});
  EXPECT_EQ(b.exemplars.size(), 2u);
}

TEST(PromptTest, QaMatchesGolden) {
  ViggoMr test = parse_viggo_mr(
      "give_opinion(name[SpellForce 3], rating[poor], genres[real-time strategy, role-playing])");
  PromptBundle b = build_qa({tony_hawk()}, serialize_prompt_mr(test));
  EXPECT_EQ(b.rendered, read_file(testing::test_path("fixtures/golden/qa_prompt.txt")));
  std::vector<std::string> lines = split(b.rendered, "\n");
  EXPECT_EQ(lines[0],
            "[PROMPT]: confirm = yes | name = Tony Hawk's Pro Skater 3 | release_year = 2001 | "
            "genres = sport");
  EXPECT_EQ(lines[1],
            "[SENTENCE]: Gotcha! So you're referring to the Tony Hawk's Pro Skater 3 sports "
            "game, which was released in 2001?");
  EXPECT_EQ(b.stop_sequences, (std::vector<std::string>{"[PROMPT]:", "\n"}));
}

TEST(PromptTest, QaMarkersAreConfigurable) {
  QaMarkers m;
  m.prompt = "[prompt]:";
  m.sentence = "[sentence]:";
  m.trailing_space = true;
  PromptBundle b = build_qa({tony_hawk()}, "request = yes | specifier = fun", m);
  EXPECT_TRUE(starts_with(b.rendered, "[prompt]: confirm = yes"));
  EXPECT_TRUE(ends_with(b.rendered, "\n[sentence]: "));
  EXPECT_EQ(b.stop_sequences[0], "[prompt]:");
  m.prompt = "";
  EXPECT_THROW(build_qa({}, "request = yes", m), Error);
}

TEST(PromptTest, ZeroShotPrompts) {
  EXPECT_EQ(build_s2s({}, kBabbo).rendered, std::string(kBabbo) + "\n");
  EXPECT_EQ(build_qa({}, kBabbo).rendered,
            std::string("[PROMPT]: ") + kBabbo + "\n[SENTENCE]:");
}

TEST(PromptTest, RejectsMultilineAndMarkerCollisions) {
  std::vector<Exemplar> ex = kg_exemplars();
  ex[0].reference = "two\nlines";
  try {
    build_s2s(ex, kBabbo);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmbeddedNewline);
  }
  ex = kg_exemplars();
  ex[1].reference = "see [SENTENCE]: here";
  try {
    build_qa(ex, kBabbo);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMarkerCollision);
  }
  EXPECT_NO_THROW(build_s2s(ex, kBabbo));
  EXPECT_THROW(build_s2s(kg_exemplars(), "  "), Error);
}

TEST(PromptTest, FormatAndStrategyNames) {
  EXPECT_EQ(parse_format("S2S"), PromptFormat::kS2S);
  EXPECT_EQ(format_name(parse_format("qa")), "qa");
  EXPECT_THROW(parse_format("json"), Error);
  EXPECT_EQ(parse_strategy(strategy_name(SamplingStrategy::kPerDialogueAct)),
            SamplingStrategy::kPerDialogueAct);
  EXPECT_THROW(parse_strategy("greedy"), Error);
}

class SamplingTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::vector<CorpusRecord> all = load_viggo_dir(data_path("viggo"));
    train_ = filter_split(all, "train");
    test_ = filter_split(all, "test");
  }
  std::vector<CorpusRecord> train_, test_;
};

TEST_F(SamplingTest, UniformIsSeededAndDistinct) {
  SamplingLog log;
  auto a = sample_exemplars(train_, 10, SamplingStrategy::kUniform, 3, {}, &log);
  auto b = sample_exemplars(train_, 10, SamplingStrategy::kUniform, 3);
  ASSERT_EQ(a.size(), 10u);
  std::set<std::string> keys;
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].key, b[i].key);
    keys.insert(a[i].key);
  }
  EXPECT_EQ(keys.size(), 10u);
  EXPECT_EQ(log.exemplar_keys.size(), 10u);
  auto c = sample_exemplars(train_, 10, SamplingStrategy::kUniform, 4);
  bool differs = false;
  for (size_t i = 0; i < a.size(); ++i) differs |= a[i].key != c[i].key;
  EXPECT_TRUE(differs);
}

TEST_F(SamplingTest, InputOrderDoesNotMatter) {
  std::vector<CorpusRecord> reversed(train_.rbegin(), train_.rend());
  auto a = sample_exemplars(train_, 10, SamplingStrategy::kPerDialogueAct, 9);
  auto b = sample_exemplars(reversed, 10, SamplingStrategy::kPerDialogueAct, 9);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].key, b[i].key);
}

TEST_F(SamplingTest, PerDialogueActTakesKOfEach) {
  std::vector<std::string> test_keys;
  for (const CorpusRecord &r : test_) test_keys.push_back(r.key);
  std::vector<CorpusRecord> pool = train_;
  pool.insert(pool.end(), test_.begin(), test_.end());
  SamplingLog log;
  auto picked =
      sample_exemplars(pool, 10, SamplingStrategy::kPerDialogueAct, 11, test_keys, &log);
  std::map<std::string, size_t> per_da;
  for (const CorpusRecord &r : picked) ++per_da[r.dialogue_act()];
  EXPECT_EQ(per_da.size(), 9u);
  for (const auto &[da, n] : per_da) EXPECT_EQ(n, 10u) << da;
  EXPECT_EQ(log.per_dialogue_act.size(), 9u);
  EXPECT_TRUE(audit_leakage(log).empty());
}

TEST_F(SamplingTest, LogRoundTripsAndAuditFindsLeaks) {
  SamplingLog log;
  sample_exemplars(train_, 3, SamplingStrategy::kUniform, 1, {"x"}, &log);
  SamplingLog back = SamplingLog::from_json_text(log.to_json_text());
  EXPECT_EQ(back.exemplar_keys, log.exemplar_keys);
  EXPECT_EQ(back.test_keys, log.test_keys);
  EXPECT_EQ(back.seed, 1u);
  back.test_keys.push_back(back.exemplar_keys[1]);
  EXPECT_EQ(audit_leakage(back), std::vector<std::string>{back.exemplar_keys[1]});
  EXPECT_THROW(SamplingLog::from_json_text("{}"), Error);
}

TEST_F(SamplingTest, ShortPoolsAreRejected) {
  EXPECT_THROW(sample_exemplars(train_, train_.size() + 1, SamplingStrategy::kUniform, 0),
               Error);
  EXPECT_THROW(sample_exemplars(train_, 500, SamplingStrategy::kPerDialogueAct, 0), Error);
  std::vector<CorpusRecord> kg = load_kg_corpus(data_path("kg/corpus.jsonl"));
  kg.resize(20);
  EXPECT_THROW(sample_exemplars(kg, 2, SamplingStrategy::kPerDialogueAct, 0), Error);
  EXPECT_TRUE(sample_exemplars(kg, 0, SamplingStrategy::kUniform, 0).empty());
}

}  // namespace
}  // namespace m2t

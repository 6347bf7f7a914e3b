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

#include "m2t/corpus.h"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "m2t/error.h"
#include "m2t/mr_format.h"
#include "m2t/text.h"
#include "test_support.h"

namespace m2t {
namespace {

TEST(CsvTest, QuotesCommasAndNewlines) {
  auto rows = parse_csv("mr,ref\n\"a(b[x, y])\",\"He said \"\"hi\"\"\nthen left\"\r\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "a(b[x, y])");
  EXPECT_EQ(rows[1][1], "He said \"hi\"\nthen left");
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,\"b\""), "\"a,\"\"b\"\"\"");
  EXPECT_THROW(parse_csv("\"open"), Error);
}

TEST(CsvTest, EscapeRoundTrip) {
  std::vector<std::string> fields = {"x", "a, b", "q\"uote", "multi\nline", ""};
  std::string line;
  for (size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_escape(fields[i]);
  auto rows = parse_csv(line + "\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], fields);
}

TEST(ViggoLoaderTest, ReadsShippedSplits) {
  std::vector<CorpusRecord> all = load_viggo_dir(data_path("viggo"));
  std::map<std::string, size_t> per_split;
  std::set<std::string> keys;
  std::map<std::string, size_t> train_das;
  for (const CorpusRecord &r : all) {
    ++per_split[r.split];
    EXPECT_TRUE(keys.insert(r.key).second) << r.key;
    EXPECT_EQ(r.topic, kTopicVideoGames);
    EXPECT_FALSE(r.reference.empty());
    if (r.split == "train") ++train_das[r.dialogue_act()];
  }
  EXPECT_GE(per_split["test"], 100u);
  EXPECT_GT(per_split["dev"], 0u);
  EXPECT_EQ(train_das.size(), 9u);
  for (const auto &[da, n] : train_das) EXPECT_GE(n, 10u) << da;
}

TEST(ViggoLoaderTest, MissingColumnsAndBadRows) {
  testing::TempDir dir;
  write_file_atomic(dir.file("x.csv"), "mr,text\ninform(name[A]),A\n");
  EXPECT_THROW(load_viggo_csv(dir.file("x.csv"), "train"), Error);
  write_file_atomic(dir.file("y.csv"), "mr,ref\ninform(name[A],x\n");
  try {
    load_viggo_csv(dir.file("y.csv"), "train");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSyntaxError);
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
}

TEST(KgCorpusTest, RecordLinesRoundTrip) {
  CorpusRecord r;
  r.key = "kg-1";
  r.topic = "music";
  r.mr = parse_kg_s2s("Starship = song = We Built This City", "music");
  r.reference = "Starship sang We Built This City.";
  r.split = "train";
  r.template_category = "music.song";
  r.template_id = "music.song.a1";
  testing::TempDir dir;
  write_file_atomic(dir.file("c.jsonl"), kg_record_json_line(r) + "\n");
  std::vector<CorpusRecord> back = load_kg_corpus(dir.file("c.jsonl"));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].key, r.key);
  EXPECT_EQ(back[0].mr, r.mr);
  EXPECT_EQ(back[0].template_id, r.template_id);
  EXPECT_EQ(filter_split(back, "test").size(), 0u);
}

}  // namespace
}  // namespace m2t

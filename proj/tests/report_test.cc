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


#include "m2t/report.h"

#include <gtest/gtest.h>

#include "m2t/text.h"
#include "test_support.h"

namespace m2t {
namespace {

Report sample() {
  Report r;
  r.kind = "matrix";
  r.manifest_digest = "abc123";
  r.meta = {{"seed", "7"}, {"backend", "mock | alt"}};
  ReportTable t;
  t.name = "mock s2s semantic accuracy";
  t.columns = {"train \\ test", "music", "movies"};
  t.rows.push_back({ReportCell::text("music"), ReportCell::number(1.0, true),
                    ReportCell::number(0.123456789)});
  t.rows.push_back({ReportCell::text("movies"), ReportCell::gap(), ReportCell::count(42)});
  t.note = "incomplete: movies/music";
  r.tables.push_back(t);
  r.data["items"] = 3;
  return r;
}

TEST(ReportTest, JsonKeepsFullPrecisionAndMarks) {
  nlohmann::json j = nlohmann::json::parse(render_json(sample()));
  EXPECT_EQ(j["kind"], "matrix");
  EXPECT_EQ(j["meta"]["seed"], "7");
  const auto &rows = j["tables"][0]["rows"];
  EXPECT_EQ(rows[0][1]["value"], 1.0);
  EXPECT_EQ(rows[0][1]["marked"], true);
  EXPECT_EQ(rows[0][2], 0.123456789);
  EXPECT_TRUE(rows[1][1].is_null());
  EXPECT_TRUE(rows[1][2].is_number_integer());
  EXPECT_EQ(j["tables"][0]["note"], "incomplete: movies/music");
  EXPECT_EQ(j["data"]["items"], 3);
}

TEST(ReportTest, TsvIsLongFormat) {
  std::vector<std::string> lines = split(render_tsv(sample()), "\n");
  EXPECT_EQ(lines[0], "# kind\tmatrix");
  EXPECT_EQ(lines[2], "table\trow\tcolumn\tvalue\tmarked");
  EXPECT_EQ(lines[3], "mock s2s semantic accuracy\tmusic\tmusic\t1\t1");
  EXPECT_EQ(lines[4], "mock s2s semantic accuracy\tmusic\tmovies\t0.123456789\t0");
  EXPECT_EQ(lines[5], "mock s2s semantic accuracy\tmovies\tmusic\t\t0");
  EXPECT_EQ(lines[6], "mock s2s semantic accuracy\tmovies\tmovies\t42\t0");
}

TEST(ReportTest, MarkdownRendersTwoDecimals) {
  std::string md = render_markdown(sample());
  EXPECT_NE(md.find("| train \\ test | music | movies |"), std::string::npos);
  EXPECT_NE(md.find("| music | **1.00** | 0.12 |"), std::string::npos);
  EXPECT_NE(md.find("| movies | n/a | 42 |"), std::string::npos);
  EXPECT_NE(md.find("- backend: mock \\| alt"), std::string::npos);
}

TEST(ReportTest, WritesAllThreeFiles) {
  testing::TempDir dir;
  write_report(sample(), dir.file("out"), "matrix");
  EXPECT_EQ(read_file(dir.file("out/matrix.json")), render_json(sample()));
  EXPECT_EQ(read_file(dir.file("out/matrix.tsv")), render_tsv(sample()));
  EXPECT_EQ(read_file(dir.file("out/matrix.md")), render_markdown(sample()));
}

TEST(ReportTest, FullFormatRoundTrips) {
  for (double v : {0.1, 1.0 / 3, 123456.789, 1e-17, 0.0}) {
    EXPECT_EQ(std::stod(format_full(v)), v);
  }
  EXPECT_EQ(format_full(0.5), "0.5");
}

}  // namespace
}  // namespace m2t

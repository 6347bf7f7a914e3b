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


// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "m2t/corpus.h"
#include "m2t/error.h"
#include "m2t/experiment.h"
#include "m2t/kg_corpus.h"
#include "m2t/lexicon.h"
#include "m2t/metrics.h"
#include "m2t/mr_format.h"
#include "m2t/prompt.h"
#include "m2t/stats.h"
#include "m2t/text.h"
#include "oracles.h"
#include "test_support.h"

namespace m2t {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kStatsExact = 1e-9;
constexpr double kStatsOracle = 1e-6;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_s;  // 0: no runtime bound
  std::function<Outcome()> check;
};

#define REQUIRE(cond, msg)            \
  do {                                \
    if (!(cond)) return {false, msg}; \
  } while (0)

Outcome prompt_goldens() {
  KgMr song = parse_kg_paren(
      "(Starship, song, We Built This City), (We Built This City, genre, pop rock)", "music");
  KgMr cast = parse_kg_paren("(Scream, cast member, Liev Schreiber)", "movies");
  std::vector<Exemplar> kg = {
      {"", serialize_prompt_mr(song),
       "Starship plays pop rock like the song We Built This City.  Do you like that genre?"},
      {"", serialize_prompt_mr(cast),
       "Liev Schreiber was really good in Scream, don't you agree?."}};
  std::string s2s =
      build_s2s(kg, "name=Babbo | eatType = bistro | food = French | customerRating = outstanding")
          .rendered;
  REQUIRE(s2s == read_file(testing::test_path("fixtures/golden/s2s_prompt.txt")),
          "s2s prompt differs from golden");

  ViggoMr tony = parse_viggo_mr(
      "confirm(name[Tony Hawk's Pro Skater 3], release_year[2001], genres[sport])");
  ViggoMr test = parse_viggo_mr(
      "give_opinion(name[SpellForce 3], rating[poor], genres[real-time strategy, role-playing])");
  std::string qa = build_qa({{"", serialize_prompt_mr(tony),
                              "Gotcha! So you're referring to the Tony Hawk's Pro Skater 3 "
                              "sports game, which was released in 2001?"}},
                            serialize_prompt_mr(test))
                       .rendered;
  REQUIRE(qa == read_file(testing::test_path("fixtures/golden/qa_prompt.txt")),
          "qa prompt differs from golden");
  const std::string two_lines =
      "[PROMPT]: confirm = yes | name = Tony Hawk's Pro Skater 3 | release_year = 2001 | "
      "genres = sport\n[SENTENCE]: Gotcha! So you're referring to the Tony Hawk's Pro Skater 3 "
      "sports game, which was released in 2001?\n";
  REQUIRE(starts_with(qa, two_lines), "qa exemplar lines differ");
  return {true, "s2s and qa byte-identical"};
}

Outcome mr_round_trip() {
  MrSchema schema = MrSchema::load_default();
  size_t corpus = 0;
  auto rows = parse_csv(read_file(data_path("viggo/viggo-test.csv")));
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].empty() || rows[i][0].empty()) continue;
    ViggoMr first = parse_viggo_mr(rows[i][0], &schema);
    REQUIRE(parse_viggo_mr(serialize_viggo_mr(first), &schema) == first,
            "structured round trip: " + rows[i][0]);
    REQUIRE(parse_viggo_qa(serialize_viggo_qa(first), &schema) == first,
            "pipe round trip: " + rows[i][0]);
    ++corpus;
  }
  REQUIRE(corpus > 0, "no test-split MRs");
  SplitMix64 rng(1000);
  for (int i = 0; i < 1000; ++i) {
    ViggoMr v = testing::fuzz_viggo_mr(schema, rng);
    REQUIRE(parse_viggo_mr(serialize_viggo_mr(v), &schema) == v, serialize_viggo_mr(v));
    REQUIRE(parse_viggo_qa(serialize_viggo_qa(v), &schema) == v, serialize_viggo_qa(v));
    KgMr k = testing::fuzz_kg_mr(schema, rng);
    REQUIRE(parse_kg_s2s(serialize_kg_s2s(k), k.topic) == k, serialize_kg_s2s(k));
    REQUIRE(parse_kg_paren(serialize_kg_paren(k), k.topic) == k, serialize_kg_paren(k));
  }
  return {true, std::to_string(corpus) + " test-split MRs, 1000 fuzzed dialogue-act and 1000 "
                "fuzzed triple MRs"};
}

Outcome slot_aligner() {
  Lexicon lexicon = Lexicon::load_default();
  std::string detail;
  for (const testing::AlignerFixture &f : testing::aligner_fixtures()) {
    MeaningRepresentation mr = f.topic == kTopicVideoGames
                                   ? MeaningRepresentation(parse_viggo_mr(f.mr))
                                   : MeaningRepresentation(parse_kg_paren(f.mr, f.topic));
    AlignmentReport r = semantic_accuracy(mr, f.text, lexicon);
    REQUIRE(r.realized == f.realized && r.total == f.total,
            f.name + " gave " + std::to_string(r.realized) + "/" + std::to_string(r.total));
    if (f.name == "M3") {
      // Stated as 3/3 for an MR with two triples: compare the ratio and
      // require the total to be the MR's own triple count.
      REQUIRE(r.ratio == 3.0 / 3.0 && r.total == content_unit_count(mr), "M3 ratio");
    }
    detail += f.name + " " + std::to_string(r.realized) + "/" + std::to_string(r.total) + ", ";
  }
  size_t pairs = 0;
  Lexicon verbatim;
  for (const testing::SyntheticPair &p : testing::synthetic_pairs(500, 2026)) {
    AlignmentReport r = semantic_accuracy(p.mr, p.text, verbatim);
    REQUIRE(r.realized == testing::substring_oracle(p.mr, p.text), "oracle mismatch: " + p.text);
    ++pairs;
  }
  return {true, detail + std::to_string(pairs) + " synthetic pairs agree with the oracle"};
}

Outcome template_faithfulness() {
  FixtureTripleSource source = FixtureTripleSource::load_default();
  TemplateBank bank = TemplateBank::load_default();
  Lexicon lexicon = Lexicon::load_default();
  CorpusSplitConfig cfg;
  cfg.train_target = 1000;
  cfg.dev_target = 100;
  cfg.test_per_category = 10;
  cfg.seed = 0;
  GeneratedCorpus a = generate_corpus(source, bank, cfg);
  GeneratedCorpus b = generate_corpus(source, bank, cfg);
  REQUIRE(a.corpus_text() == b.corpus_text(), "generation is not deterministic");
  REQUIRE(a.warnings.empty(), "warnings: " + join(a.warnings, "; "));
  std::map<std::string, size_t> splits;
  std::set<std::string> keys;
  for (const CorpusRecord &r : a.records) {
    REQUIRE(keys.insert(r.key).second, "key in two places: " + r.key);
    ++splits[r.split];
    AlignmentReport s = semantic_accuracy(r.mr, r.reference, lexicon);
    REQUIRE(s.ratio == 1.0, r.key + ": " + r.reference);
  }
  size_t categories = bank.corpus_categories().size();
  REQUIRE(splits["train"] == 1000 && splits["dev"] == 100 &&
              splits["test"] == 10 * categories,
          "split sizes off target");
  return {true, std::to_string(a.records.size()) + " records (1000/100/" +
                    std::to_string(10 * categories) + "), all 1.0, disjoint, deterministic"};
}

Outcome mock_matrix() {
  ExperimentConfig cfg;  // mock backend, 4 topics, s2s and qa
  RunOutput first = run_matrix(cfg);
  RunOutput second = run_matrix(cfg);
  std::string text = render_json(first.report);
  REQUIRE(text == render_json(second.report), "reports differ between reruns");
  REQUIRE(first.manifest_text == second.manifest_text, "manifests differ between reruns");
  json j = json::parse(text);
  size_t matrices = 0;
  for (const json &t : j["tables"]) {
    std::string name = t["name"];
    bool sa = ends_with(name, "semantic accuracy");
    if (!sa && !ends_with(name, "surface similarity")) continue;
    ++matrices;
    REQUIRE(t["columns"].size() == 6 && t["rows"].size() == 5, name + ": shape");
    for (size_t r = 0; r < 4; ++r) {
      for (size_t c = 1; c <= 4; ++c) {
        const json &cell = t["rows"][r][c];
        REQUIRE(!cell.is_null(), name + ": gap");
        if (sa && c == r + 1) REQUIRE(cell["value"] == 1.0, name + ": diagonal below 1.0");
      }
    }
  }
  REQUIRE(matrices == 4, "expected 4 matrices");
  return {true, "4 complete 4x4 matrices, diagonals 1.0, reruns byte-identical"};
}

Outcome statistics() {
  SplitMix64 rng(6);
  for (int i = 0; i < 100; ++i) {
    size_t n = 2 + rng.below(50);
    std::vector<double> x, neg, y, xt;
    for (size_t j = 0; j < n; ++j) {
      x.push_back(rng.uniform() * 20 - 10);
      y.push_back(rng.uniform() * 20 - 10);
    }
    for (double v : x) {
      neg.push_back(-v);
      xt.push_back(3.5 * v + 12);
    }
    REQUIRE(std::fabs(*pearson(x, x).pearson_r - 1.0) < kStatsExact, "pearson(x,x)");
    REQUIRE(std::fabs(*pearson(x, neg).pearson_r + 1.0) < kStatsExact, "pearson(x,-x)");
    if (n >= 3) {
      REQUIRE(std::fabs(*pearson(xt, y).pearson_r - *pearson(x, y).pearson_r) < kStatsExact,
              "affine invariance");
    }
  }
  testing::PairedOracle o = testing::paired_t_oracle(testing::sleep_drug_a(), testing::sleep_drug_b());
  StatsResult r = paired_t(testing::sleep_drug_a(), testing::sleep_drug_b());
  REQUIRE(std::fabs(*r.t_statistic - o.t) < kStatsOracle, "paired t statistic");
  REQUIRE(std::fabs(*r.p_value - o.p) < kStatsOracle, "paired t p-value");
  char buf[96];
  std::snprintf(buf, sizeof(buf), "sleep data t=%.6f p=%.6f", *r.t_statistic, *r.p_value);
  return {true, buf};
}

Outcome viggo_sampling() {
  std::vector<CorpusRecord> all = load_viggo_dir(data_path("viggo"));
  std::vector<std::string> test_keys;
  std::set<std::string> acts;
  for (const CorpusRecord &r : all) {
    if (r.split == "test") test_keys.push_back(r.key);
    acts.insert(r.dialogue_act());
  }
  SamplingLog log;
  std::vector<CorpusRecord> picked =
      sample_exemplars(all, 10, SamplingStrategy::kPerDialogueAct, 7, test_keys, &log);
  std::map<std::string, size_t> per_da;
  for (const CorpusRecord &r : picked) ++per_da[r.dialogue_act()];
  REQUIRE(per_da.size() == acts.size(), "not every dialogue act sampled");
  for (const auto &[da, n] : per_da) REQUIRE(n == 10, da + " has " + std::to_string(n));
  SamplingLog back = SamplingLog::from_json_text(log.to_json_text());
  REQUIRE(audit_leakage(back).empty(), "leakage in manifest audit");
  return {true, std::to_string(acts.size()) + " dialogue acts x 10, audit clean"};
}

Outcome novel_protocol() {
  ExperimentConfig cfg;
  cfg.num_candidates = 4;
  RunOutput run = run_novel(cfg, data_path("fixtures/novel_mrs.tsv"));
  REQUIRE(run.package.size() == 4 * cfg.num_candidates,
          "package has " + std::to_string(run.package.size()) + " items");
  for (const ReportTable &t : run.report.tables) {
    for (const std::string &c : t.columns) {
      REQUIRE(c.find("surface") == std::string::npos, "surface column present");
    }
  }
  for (const ItemScore &s : run.items) REQUIRE(!s.surface, "surface score present");
  return {true, "16 items for 4 MRs x 4 candidates, no surface column"};
}

int run_all() {
  std::vector<Criterion> criteria = {
      {"prompt golden files", 1, prompt_goldens},
      {"MR round-trip", 10, mr_round_trip},
      {"slot-aligner oracle", 30, slot_aligner},
      {"template faithfulness", 120, template_faithfulness},
      {"end-to-end mock matrix", 120, mock_matrix},
      {"statistics oracles", 0, statistics},
      {"per-dialogue-act sampling", 0, viggo_sampling},
      {"novel-MR protocol", 0, novel_protocol},
  };
  int failures = 0;
  for (const Criterion &c : criteria) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(Clock::now() - start).count();
    if (o.ok && c.budget_s > 0 && s > c.budget_s) {
      o = {false, "over runtime budget of " + format_fixed(c.budget_s, 0) + " s"};
    }
    std::printf("%s  %-26s %8.3f s  %s\n", o.ok ? "PASS" : "FAIL", c.name.c_str(), s,
                o.detail.c_str());
    failures += o.ok ? 0 : 1;
  }
  std::fflush(stdout);
  return failures;
}

}  // namespace
}  // namespace m2t

int main() { return m2t::run_all(); }

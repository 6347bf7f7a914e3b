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


#ifndef M2T_TESTS_ORACLES_H_
#define M2T_TESTS_ORACLES_H_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "m2t/digest.h"
#include "m2t/mr.h"

// Reference implementations kept deliberately naive and independent of the
// library code they check.
namespace m2t::testing {

struct AlignerFixture {
  std::string name;
  std::string mr;  // paren form for KG, structured form for Viggo
  std::string topic;
  std::string text;
  size_t realized;
  size_t total;
};

inline const std::vector<AlignerFixture> &aligner_fixtures() {
  static const std::vector<AlignerFixture> fixtures = {
      {"M1",
       "(Peter Capaldi, award, BAFTA Award for Best Short Film), (BAFTA Award for Best Short "
       "Film, show, 47th British Academy Film Awards), (BAFTA Award for Best Short Film, work, "
       "Franz Kafka's It's a Wonderful Life)",
       "movies",
       "I think it's really great when a talented actor wins an award. do you think Peter "
       "Capaldi deserved to win a BAFTA Award for Best Short Film in 1980, for Franz Kafka's "
       "It's a Wonderful Life?",
       2, 3},
      {"M2", "(Kellie Pickler, song, Red High Heels), (Red High Heels, genre, country music)",
       "music",
       "Kellie Pickler is a country singer, and she's also a rapper. Do you know her songs?", 1,
       2},
      {"M3",
       "(Saturday Night Live, award, Primetime Emmy Award for Outstanding Variety Sketch "
       "Series), (Saturday Night Live, date, 2019)",
       "tv",
       "Saturday Night Live won a Primetime Emmy Award for Outstanding Variety Sketch Series in "
       "2019. How does the fact that it got this award affect your opinion of the show?",
       2, 2},
      {"M4",
       "(Len Ford, member of sports team, Los Angeles Dons), (Len Ford, position played on "
       "team, end)",
       "sports",
       "Did you know that Len Ford has played as a part of famous teams, such as the Los "
       "Angeles Dons, and played positions such as end.",
       2, 2},
      {"V-give_opinion",
       "give_opinion(name[SpellForce 3], rating[poor], genres[real-time strategy, "
       "role-playing], player_perspective[bird view])",
       "video_games",
       "I think that SpellForce 3 is one of the worst games I've ever played. Trying to combine "
       "the real-time strategy and role-playing genres just doesn't work, and the bird's eye "
       "view makes it near impossible to play.",
       4, 4},
      {"V-verify_attribute",
       "verify_attribute(name[Little Big Adventure], rating[average], has_multiplayer[no], "
       "platforms[PlayStation])",
       "video_games",
       "I recall that you were not that fond of Little Big Adventure. Does single-player gaming "
       "on the PlayStation quickly get boring for you?",
       4, 4},
  };
  return fixtures;
}

inline std::string oracle_fold(const std::string &s) {
  std::string out = " ";
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    out += std::isalnum(u) ? static_cast<char>(std::tolower(u)) : ' ';
  }
  out += ' ';
  std::string squeezed;
  for (char c : out) {
    if (c == ' ' && !squeezed.empty() && squeezed.back() == ' ') continue;
    squeezed += c;
  }
  return squeezed;
}

// Number of triples whose object occurs as a whole-word substring.
inline size_t substring_oracle(const KgMr &mr, const std::string &text) {
  std::string hay = oracle_fold(text);
  size_t n = 0;
  for (const Triple &t : mr.triples) {
    if (hay.find(oracle_fold(t.object)) != std::string::npos) ++n;
  }
  return n;
}

inline std::vector<std::string> split_words(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct SyntheticPair {
  KgMr mr;
  std::string text;
  size_t chosen = 0;
};

// Alphabetic words only, so that case folding is the only normalization in
// play. Objects and filler draw from disjoint vocabularies.
inline std::vector<SyntheticPair> synthetic_pairs(size_t count, uint64_t seed) {
  static const std::vector<std::string> object_words = {
      "amber", "basalt", "cobalt", "delta", "ember", "fjord", "garnet", "harbor",
      "indigo", "juniper", "kestrel", "lagoon", "meadow", "nimbus", "onyx", "prairie",
      "quartz", "raven", "sierra", "tundra", "umber", "violet", "willow", "zephyr"};
  static const std::vector<std::string> filler_words = {
      "the", "a", "and", "then", "we", "saw", "near", "with", "quite", "really", "so", "it"};
  static const std::vector<std::string> relations = {"genre", "cast member", "award",
                                                      "member of sports team", "performer"};
  SplitMix64 rng(seed);
  auto word = [&](const std::vector<std::string> &v) { return v[rng.below(v.size())]; };
  auto cased = [&](std::string w) {
    switch (rng.below(3)) {
      case 0:
        w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
        break;
      case 1:
        for (char &c : w) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        break;
      default:
        break;
    }
    return w;
  };
  std::vector<SyntheticPair> out;
  while (out.size() < count) {
    KgMr mr;
    size_t n = 1 + rng.below(4);
    for (size_t i = 0; i < n; ++i) {
      Triple t;
      t.subject = "Subject " + std::to_string(i);
      t.relation = word(relations);
      size_t len = 1 + rng.below(3);
      for (size_t j = 0; j < len; ++j) t.object += (j ? " " : "") + word(object_words);
      mr.triples.push_back(t);
    }
    for (uint32_t mask = 0; mask < (1u << n) && out.size() < count; ++mask) {
      SyntheticPair p;
      p.mr = mr;
      std::vector<std::string> parts;
      for (size_t i = 0; i < n; ++i) {
        parts.push_back(word(filler_words));
        if (mask & (1u << i)) {
          std::string obj;
          for (const std::string &w : split_words(mr.triples[i].object)) {
            obj += (obj.empty() ? "" : " ") + cased(w);
          }
          parts.push_back(obj + (rng.below(2) ? "," : ""));
          ++p.chosen;
        }
      }
      parts.push_back(word(filler_words) + ".");
      for (const std::string &s : parts) p.text += (p.text.empty() ? "" : " ") + s;
      out.push_back(std::move(p));
    }
  }
  return out;
}

// chrF by explicit enumeration: every n-gram of the candidate is matched
// against an unused copy in the reference.
inline double chrf_oracle(const std::string &candidate, const std::string &reference,
                          int max_n = 6, double beta = 2.0) {
  auto strip = [](const std::string &s) {
    std::string out;
    for (char c : s) {
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    }
    return out;
  };
  std::string c = strip(candidate), r = strip(reference);
  double p_sum = 0, r_sum = 0;
  int orders = 0;
  for (int n = 1; n <= max_n; ++n) {
    size_t un = static_cast<size_t>(n);
    if (c.size() < un || r.size() < un) continue;
    std::vector<std::string> pool;
    for (size_t i = 0; i + un <= r.size(); ++i) pool.push_back(r.substr(i, un));
    size_t matches = 0;
    for (size_t i = 0; i + un <= c.size(); ++i) {
      auto it = std::find(pool.begin(), pool.end(), c.substr(i, un));
      if (it != pool.end()) {
        pool.erase(it);
        ++matches;
      }
    }
    p_sum += static_cast<double>(matches) / static_cast<double>(c.size() - un + 1);
    r_sum += static_cast<double>(matches) / static_cast<double>(r.size() - un + 1);
    ++orders;
  }
  if (orders == 0) return 0.0;
  double p = p_sum / orders, rc = r_sum / orders;
  if (p + rc == 0) return 0.0;
  return (1 + beta * beta) * p * rc / (beta * beta * p + rc);
}

// Two-sided tail of Student's t by composite Simpson integration of the
// density over [0, |t|].
inline double t_two_sided_oracle(double t, double df, int intervals = 200000) {
  double a = std::fabs(t);
  double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
             std::sqrt(df * M_PI);
  auto f = [&](double x) { return c * std::pow(1 + x * x / df, -(df + 1) / 2); };
  double h = a / intervals;
  double s = f(0) + f(a);
  for (int i = 1; i < intervals; ++i) s += f(i * h) * (i % 2 ? 4 : 2);
  return 1.0 - 2.0 * (s * h / 3);
}

struct PairedOracle {
  double t;
  double p;
};

inline PairedOracle paired_t_oracle(const std::vector<double> &x, const std::vector<double> &y) {
  size_t n = x.size();
  long double sum = 0, sum_sq = 0;
  for (size_t i = 0; i < n; ++i) {
    long double d = static_cast<long double>(x[i]) - y[i];
    sum += d;
    sum_sq += d * d;
  }
  long double mean = sum / n;
  long double var = (sum_sq - n * mean * mean) / (n - 1);
  double t = static_cast<double>(mean / std::sqrt(var / n));
  return {t, t_two_sided_oracle(t, static_cast<double>(n - 1))};
}

// Student's sleep data: extra hours of sleep under two drugs, same patients.
inline const std::vector<double> &sleep_drug_a() {
  static const std::vector<double> v = {0.7, -1.6, -0.2, -1.2, -0.1, 3.4, 3.7, 0.8, 0.0, 2.0};
  return v;
}
inline const std::vector<double> &sleep_drug_b() {
  static const std::vector<double> v = {1.9, 0.8, 1.1, 0.1, -0.1, 4.4, 5.5, 1.6, 4.6, 3.4};
  return v;
}

}  // namespace m2t::testing

#endif  // M2T_TESTS_ORACLES_H_

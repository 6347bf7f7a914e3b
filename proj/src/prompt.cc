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

#include <algorithm>
#include <json.hpp>
#include <set>

#include "m2t/digest.h"
#include "m2t/error.h"
#include "m2t/mr_format.h"
#include "m2t/text.h"

namespace m2t {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_name(PromptFormat format) {
  return format == PromptFormat::kS2S ? "s2s" : "qa";
}

PromptFormat parse_format(const std::string &name) {
  std::string n = to_lower_ascii(name);
  if (n == "s2s") return PromptFormat::kS2S;
  if (n == "qa") return PromptFormat::kQA;
  throw Error(ErrorKind::kConfigError, "unknown prompt format: " + name);
}

Exemplar exemplar_from(const CorpusRecord &record) {
  return {record.key, serialize_prompt_mr(record.mr), record.reference};
}

namespace {

void check_line(const std::string &what, const std::string &s) {
  if (s.find('\n') != std::string::npos || s.find('\r') != std::string::npos) {
    throw Error(ErrorKind::kEmbeddedNewline, what + " spans lines: " + s);
  }
  if (trim(s).empty()) throw Error(ErrorKind::kValidationError, what + " is empty");
}

void check_markers(const std::string &s, const QaMarkers &m) {
  if (contains(s, m.prompt) || contains(s, m.sentence)) {
    throw Error(ErrorKind::kMarkerCollision, s);
  }
}

}  // namespace

PromptBundle build_s2s(const std::vector<Exemplar> &exemplars,
                       const std::string &test_mr) {
  PromptBundle b;
  b.format = PromptFormat::kS2S;
  b.exemplars = exemplars;
  b.test_mr = test_mr;
  for (const Exemplar &e : exemplars) {
    check_line("exemplar MR", e.mr);
    check_line("exemplar reference", e.reference);
    b.rendered += e.mr + "\n" + e.reference + "\n\n";
  }
  check_line("test MR", test_mr);
  b.rendered += test_mr + "\n";
  b.stop_sequences = {"\n\n"};
  return b;
}

PromptBundle build_qa(const std::vector<Exemplar> &exemplars,
                      const std::string &test_mr, const QaMarkers &markers) {
  if (markers.prompt.empty() || markers.sentence.empty()) {
    throw Error(ErrorKind::kConfigError, "QA markers must be non-empty");
  }
  PromptBundle b;
  b.format = PromptFormat::kQA;
  b.exemplars = exemplars;
  b.test_mr = test_mr;
  for (const Exemplar &e : exemplars) {
    check_line("exemplar MR", e.mr);
    check_line("exemplar reference", e.reference);
    check_markers(e.mr, markers);
    check_markers(e.reference, markers);
    b.rendered += markers.prompt + " " + e.mr + "\n" + markers.sentence + " " +
                  e.reference + "\n";
  }
  check_line("test MR", test_mr);
  check_markers(test_mr, markers);
  b.rendered += markers.prompt + " " + test_mr + "\n" + markers.sentence;
  if (markers.trailing_space) b.rendered += " ";
  b.stop_sequences = {markers.prompt, "\n"};
  return b;
}

PromptBundle build_prompt(PromptFormat format,
                          const std::vector<Exemplar> &exemplars,
                          const std::string &test_mr, const QaMarkers &markers) {
  return format == PromptFormat::kS2S ? build_s2s(exemplars, test_mr)
                                      : build_qa(exemplars, test_mr, markers);
}

std::string strategy_name(SamplingStrategy strategy) {
  return strategy == SamplingStrategy::kUniform ? "uniform" : "per_dialogue_act";
}

SamplingStrategy parse_strategy(const std::string &name) {
  if (name == "uniform") return SamplingStrategy::kUniform;
  if (name == "per_dialogue_act" || name == "per-da") return SamplingStrategy::kPerDialogueAct;
  throw Error(ErrorKind::kConfigError, "unknown sampling strategy: " + name);
}

namespace {

// First k of a seeded Fisher-Yates shuffle.
std::vector<const CorpusRecord *> draw(std::vector<const CorpusRecord *> pool,
                                       size_t k, uint64_t seed) {
  SplitMix64 rng(seed);
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

std::vector<CorpusRecord> sample_exemplars(const std::vector<CorpusRecord> &corpus,
                                           size_t k, SamplingStrategy strategy,
                                           uint64_t seed,
                                           const std::vector<std::string> &test_keys,
                                           SamplingLog *log) {
  std::set<std::string> excluded(test_keys.begin(), test_keys.end());
  std::vector<const CorpusRecord *> pool;
  for (const CorpusRecord &r : corpus) {
    if (!excluded.count(r.key)) pool.push_back(&r);
  }
  std::sort(pool.begin(), pool.end(), [](const CorpusRecord *a, const CorpusRecord *b) {
    return a->key < b->key;
  });
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](const CorpusRecord *a, const CorpusRecord *b) {
                           return a->key == b->key;
                         }),
             pool.end());

  SamplingLog local;
  local.seed = seed;
  local.k = k;
  local.strategy = strategy;
  local.test_keys = test_keys;
  std::vector<const CorpusRecord *> picked;
  if (k > 0 && strategy == SamplingStrategy::kUniform) {
    if (pool.size() < k) {
      throw Error(ErrorKind::kInsufficientCorpus,
                  std::to_string(pool.size()) + " records for k=" + std::to_string(k));
    }
    picked = draw(pool, k, seed);
  } else if (k > 0) {
    std::map<std::string, std::vector<const CorpusRecord *>> by_da;
    for (const CorpusRecord *r : pool) {
      std::string da = r->dialogue_act();
      if (da.empty()) {
        throw Error(ErrorKind::kInsufficientCorpus,
                    "per_dialogue_act sampling needs dialogue-act records: " + r->key);
      }
      by_da[da].push_back(r);
    }
    if (by_da.empty()) throw Error(ErrorKind::kInsufficientCorpus, "empty corpus");
    for (const auto &[da, records] : by_da) {
      if (records.size() < k) {
        throw Error(ErrorKind::kInsufficientCorpus,
                    da + " has " + std::to_string(records.size()) + " records for k=" +
                        std::to_string(k));
      }
      for (const CorpusRecord *r : draw(records, k, stable_hash(da, seed))) {
        picked.push_back(r);
      }
      local.per_dialogue_act[da] = k;
    }
  }
  std::vector<CorpusRecord> out;
  for (const CorpusRecord *r : picked) {
    out.push_back(*r);
    local.exemplar_keys.push_back(r->key);
  }
  if (log != nullptr) *log = std::move(local);
  return out;
}

std::string SamplingLog::to_json_text() const {
  ordered_json j;
  j["seed"] = seed;
  j["k"] = k;
  j["strategy"] = strategy_name(strategy);
  j["exemplar_keys"] = exemplar_keys;
  j["test_keys"] = test_keys;
  if (!per_dialogue_act.empty()) j["per_dialogue_act"] = per_dialogue_act;
  return j.dump();
}

SamplingLog SamplingLog::from_json_text(const std::string &text) {
  SamplingLog log;
  try {
    json j = json::parse(text);
    log.seed = j.at("seed").get<uint64_t>();
    log.k = j.at("k").get<size_t>();
    log.strategy = parse_strategy(j.at("strategy").get<std::string>());
    log.exemplar_keys = j.at("exemplar_keys").get<std::vector<std::string>>();
    log.test_keys = j.at("test_keys").get<std::vector<std::string>>();
    if (j.contains("per_dialogue_act")) {
      log.per_dialogue_act = j.at("per_dialogue_act").get<std::map<std::string, size_t>>();
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kValidationError, std::string("sampling log: ") + e.what());
  }
  return log;
}

std::vector<std::string> audit_leakage(const SamplingLog &log) {
  std::set<std::string> test(log.test_keys.begin(), log.test_keys.end());
  std::vector<std::string> leaked;
  for (const std::string &k : log.exemplar_keys) {
    if (test.count(k)) leaked.push_back(k);
  }
  return leaked;
}

}  // namespace m2t

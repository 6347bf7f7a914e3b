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

#include <cstdio>
#include <filesystem>
#include <json.hpp>

#include "m2t/error.h"
#include "m2t/mr_format.h"
#include "m2t/text.h"

namespace m2t {

using nlohmann::json;
using nlohmann::ordered_json;

std::string CorpusRecord::dialogue_act() const {
  if (const auto *v = std::get_if<ViggoMr>(&mr)) return v->dialogue_act;
  return "";
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        field_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (field_started || !field.empty() || !row.empty()) {
          row.push_back(std::move(field));
          rows.push_back(std::move(row));
        }
        row.clear();
        field.clear();
        field_started = false;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) throw Error(ErrorKind::kSyntaxError, "unterminated CSV quote");
  if (field_started || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_escape(const std::string &field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<CorpusRecord> load_viggo_csv(const std::string &path,
                                         const std::string &split,
                                         const MrSchema *strict) {
  auto rows = parse_csv(read_file(path));
  if (rows.empty()) return {};
  int mr_col = -1, ref_col = -1;
  for (size_t c = 0; c < rows[0].size(); ++c) {
    std::string name = trim_copy(rows[0][c]);
    if (name == "mr") mr_col = static_cast<int>(c);
    if (name == "ref") ref_col = static_cast<int>(c);
  }
  if (mr_col < 0 || ref_col < 0) {
    throw Error(ErrorKind::kSyntaxError, path + ": header needs mr and ref columns");
  }
  std::vector<CorpusRecord> out;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    if (row.size() <= static_cast<size_t>(std::max(mr_col, ref_col))) {
      throw Error(ErrorKind::kSyntaxError,
                  path + ": short row " + std::to_string(r + 1));
    }
    CorpusRecord rec;
    char key[64];
    std::snprintf(key, sizeof(key), "viggo-%s-%05zu", split.c_str(), r - 1);
    rec.key = key;
    rec.topic = kTopicVideoGames;
    try {
      rec.mr = parse_viggo_mr(row[mr_col], strict);
    } catch (const Error &e) {
      throw Error(e.kind(), path + " row " + std::to_string(r + 1) + ": " + e.what());
    }
    rec.reference = trim_copy(row[ref_col]);
    rec.split = split;
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<CorpusRecord> load_viggo_dir(const std::string &dir,
                                         const MrSchema *strict) {
  std::vector<CorpusRecord> out;
  const std::pair<const char *, const char *> kFiles[] = {
      {"viggo-train.csv", "train"},
      {"viggo-valid.csv", "dev"},
      {"viggo-test.csv", "test"}};
  for (const auto &[file, split] : kFiles) {
    std::string path = dir + "/" + file;
    if (!std::filesystem::exists(path)) continue;
    auto part = load_viggo_csv(path, split, strict);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::vector<CorpusRecord> load_kg_corpus(const std::string &path) {
  std::vector<CorpusRecord> out;
  size_t line_no = 0;
  for (const std::string &line : read_lines(path)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception &e) {
      throw Error(ErrorKind::kSyntaxError,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    CorpusRecord rec;
    rec.key = j.at("key").get<std::string>();
    rec.topic = j.value("topic", std::string(kTopicOther));
    if (j.contains("mr_s2s")) {
      rec.mr = parse_kg_s2s(j.at("mr_s2s").get<std::string>(), rec.topic);
    } else {
      rec.mr = parse_kg_paren(j.at("mr_paren").get<std::string>(), rec.topic);
    }
    rec.reference = j.value("reference", "");
    rec.template_category = j.value("template_category", "");
    rec.template_id = j.value("template_id", "");
    rec.split = j.value("split", "");
    out.push_back(std::move(rec));
  }
  return out;
}

std::string kg_record_json_line(const CorpusRecord &record) {
  const KgMr &mr = std::get<KgMr>(record.mr);
  ordered_json j;
  j["key"] = record.key;
  j["topic"] = record.topic;
  j["mr_paren"] = serialize_kg_paren(mr);
  j["mr_s2s"] = serialize_kg_s2s(mr);
  j["reference"] = record.reference;
  j["template_category"] = record.template_category;
  j["template_id"] = record.template_id;
  j["split"] = record.split;
  return j.dump();
}

std::vector<CorpusRecord> load_corpus(const std::string &path) {
  if (std::filesystem::is_directory(path)) return load_viggo_dir(path);
  if (ends_with(path, ".csv")) {
    std::string split = "test";
    if (contains(path, "train")) split = "train";
    if (contains(path, "valid") || contains(path, "dev")) split = "dev";
    return load_viggo_csv(path, split);
  }
  return load_kg_corpus(path);
}

std::vector<CorpusRecord> filter_split(const std::vector<CorpusRecord> &records,
                                       const std::string &split) {
  std::vector<CorpusRecord> out;
  for (const auto &r : records) {
    if (r.split == split) out.push_back(r);
  }
  return out;
}

}  // namespace m2t

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

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "m2t/text.h"

namespace m2t {

using nlohmann::ordered_json;

std::string format_full(double value) {
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

namespace {

ordered_json cell_json(const ReportCell &c) {
  if (std::holds_alternative<double>(c.value)) {
    ordered_json j = std::get<double>(c.value);
    if (!c.marked) return j;
    return {{"value", std::get<double>(c.value)}, {"marked", true}};
  }
  if (std::holds_alternative<std::string>(c.value)) return std::get<std::string>(c.value);
  if (std::holds_alternative<long long>(c.value)) return std::get<long long>(c.value);
  return nullptr;
}

std::string tsv_escape(std::string s) {
  for (char &c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::string md_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out.push_back(c);
  }
  return out;
}

std::string cell_text(const ReportCell &c, bool full) {
  if (std::holds_alternative<double>(c.value)) {
    double v = std::get<double>(c.value);
    return full ? format_full(v) : format_fixed(v, 2);
  }
  if (std::holds_alternative<std::string>(c.value)) return std::get<std::string>(c.value);
  if (std::holds_alternative<long long>(c.value)) return std::to_string(std::get<long long>(c.value));
  return full ? "" : "n/a";
}

}  // namespace

std::string render_json(const Report &report) {
  ordered_json j;
  j["kind"] = report.kind;
  j["manifest_digest"] = report.manifest_digest;
  ordered_json meta = ordered_json::object();
  for (const auto &[k, v] : report.meta) meta[k] = v;
  j["meta"] = meta;
  ordered_json tables = ordered_json::array();
  for (const ReportTable &t : report.tables) {
    ordered_json tj;
    tj["name"] = t.name;
    tj["columns"] = t.columns;
    ordered_json rows = ordered_json::array();
    for (const auto &row : t.rows) {
      ordered_json r = ordered_json::array();
      for (const ReportCell &c : row) r.push_back(cell_json(c));
      rows.push_back(std::move(r));
    }
    tj["rows"] = rows;
    if (!t.note.empty()) tj["note"] = t.note;
    tables.push_back(std::move(tj));
  }
  j["tables"] = tables;
  j["data"] = report.data;
  return j.dump(1) + "\n";
}

std::string render_tsv(const Report &report) {
  std::string out = "# kind\t" + report.kind + "\n# manifest_digest\t" +
                    report.manifest_digest + "\n";
  out += "table\trow\tcolumn\tvalue\tmarked\n";
  for (const ReportTable &t : report.tables) {
    for (const auto &row : t.rows) {
      std::string label = row.empty() ? "" : cell_text(row[0], true);
      for (size_t i = 1; i < row.size() && i < t.columns.size(); ++i) {
        out += tsv_escape(t.name) + "\t" + tsv_escape(label) + "\t" + tsv_escape(t.columns[i]) +
               "\t" + tsv_escape(cell_text(row[i], true)) + "\t" +
               (row[i].marked ? "1" : "0") + "\n";
      }
    }
  }
  return out;
}

std::string render_markdown(const Report &report) {
  std::string out = "# " + report.kind + " report\n\n";
  out += "- manifest: `" + report.manifest_digest + "`\n";
  for (const auto &[k, v] : report.meta) out += "- " + k + ": " + md_escape(v) + "\n";
  for (const ReportTable &t : report.tables) {
    out += "\n## " + md_escape(t.name) + "\n\n";
    std::vector<std::string> header;
    for (const std::string &c : t.columns) header.push_back(md_escape(c));
    out += "| " + join(header, " | ") + " |\n|";
    for (size_t i = 0; i < t.columns.size(); ++i) out += i == 0 ? "---|" : "---:|";
    out += "\n";
    for (const auto &row : t.rows) {
      std::vector<std::string> cells;
      for (const ReportCell &c : row) {
        std::string s = md_escape(cell_text(c, false));
        cells.push_back(c.marked ? "**" + s + "**" : s);
      }
      out += "| " + join(cells, " | ") + " |\n";
    }
    if (!t.note.empty()) out += "\n" + t.note + "\n";
  }
  return out;
}

void write_report(const Report &report, const std::string &dir,
                  const std::string &basename) {
  std::filesystem::create_directories(dir);
  std::filesystem::path base = std::filesystem::path(dir) / basename;
  write_file_atomic(base.string() + ".json", render_json(report));
  write_file_atomic(base.string() + ".tsv", render_tsv(report));
  write_file_atomic(base.string() + ".md", render_markdown(report));
}

}  // namespace m2t

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

#ifndef M2T_REPORT_H_
#define M2T_REPORT_H_

#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

namespace m2t {

// A table cell: empty (a gap), a number, a count, or text. `marked` flags diagonal
// (within-domain) cells.
struct ReportCell {
  std::variant<std::monostate, double, std::string, long long> value;
  bool marked = false;

  static ReportCell gap() { return {}; }
  static ReportCell number(double v, bool marked = false) { return {v, marked}; }
  static ReportCell text(std::string s) { return {std::move(s), false}; }
  static ReportCell count(size_t n) { return {static_cast<long long>(n), false}; }
};

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<ReportCell>> rows;
  std::string note;
};

struct Report {
  std::string kind;             // "matrix", "viggo", "novel", "correlate", ...
  std::string manifest_digest;  // sha256 of the run manifest
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<ReportTable> tables;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();  // machine detail
};

// Full precision; deterministic key order.
std::string render_json(const Report &report);
// Long format: table, row, column, value, marked. Full precision.
std::string render_tsv(const Report &report);
// Two decimals; marked cells in bold; gaps as "n/a".
std::string render_markdown(const Report &report);

// Writes <dir>/<basename>.{json,tsv,md}.
void write_report(const Report &report, const std::string &dir,
                  const std::string &basename);

// Shortest text that parses back to the same double.
std::string format_full(double value);

}  // namespace m2t

#endif  // M2T_REPORT_H_

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

#ifndef M2T_TEXT_H_
#define M2T_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace m2t {

// Trims ASCII whitespace from both ends.
std::string_view trim(std::string_view s);
std::string trim_copy(std::string_view s);

// Splits on every occurrence of `delim` (a literal, possibly multi-char).
std::vector<std::string> split(std::string_view s, std::string_view delim);

std::string join(const std::vector<std::string> &parts, std::string_view sep);

bool contains(std::string_view haystack, std::string_view needle);
bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

std::string to_lower_ascii(std::string_view s);

// Whole-file helpers. read_file throws Error(kIoError) on failure.
std::string read_file(const std::string &path);
std::vector<std::string> read_lines(const std::string &path);

// Writes to `path` through a sibling temp file and rename, so readers never
// observe a partial file.
void write_file_atomic(const std::string &path, std::string_view contents);

// Appends one line (a trailing newline is added) with a single write(2) on an
// O_APPEND descriptor.
void append_line(const std::string &path, std::string_view line);

// Path of a file under the shipped data directory.
std::string data_path(std::string_view relative);

// Fixed two-decimal rendering used by the Markdown tables.
std::string format_fixed(double value, int decimals = 2);

}  // namespace m2t

#endif  // M2T_TEXT_H_

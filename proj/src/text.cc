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

#include "m2t/text.h"

#include <fcntl.h>
#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <atomic>

#include "m2t/error.h"

namespace m2t {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntaxError: return "SyntaxError";
    case ErrorKind::kUnknownDialogueAct: return "UnknownDialogueAct";
    case ErrorKind::kUnknownAttribute: return "UnknownAttribute";
    case ErrorKind::kUnknownRelation: return "UnknownRelation";
    case ErrorKind::kDuplicateAttribute: return "DuplicateAttribute";
    case ErrorKind::kAmbiguousCommaSplit: return "AmbiguousCommaSplit";
    case ErrorKind::kEscapingRequired: return "EscapingRequired";
    case ErrorKind::kInvalidValue: return "InvalidValue";
    case ErrorKind::kNoTemplateForSignature: return "NoTemplateForSignature";
    case ErrorKind::kInsufficientTriples: return "InsufficientTriples";
    case ErrorKind::kEndpointUnavailable: return "EndpointUnavailable";
    case ErrorKind::kUnmappedRelation: return "UnmappedRelation";
    case ErrorKind::kEmbeddedNewline: return "EmbeddedNewline";
    case ErrorKind::kMarkerCollision: return "MarkerCollision";
    case ErrorKind::kInsufficientCorpus: return "InsufficientCorpus";
    case ErrorKind::kBackendError: return "BackendError";
    case ErrorKind::kAuthMissing: return "AuthMissing";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kUnparsableTestMr: return "UnparsableTestMr";
    case ErrorKind::kDegenerateSample: return "DegenerateSample";
    case ErrorKind::kOutOfRangeLabel: return "OutOfRangeLabel";
    case ErrorKind::kStoreMissing: return "StoreMissing";
    case ErrorKind::kEmptyGroup: return "EmptyGroup";
    case ErrorKind::kValidationError: return "ValidationError";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::string_view trim(std::string_view s) {
  size_t begin = 0;
  size_t end = s.size();
  while (begin < end && is_space(s[begin])) ++begin;
  while (end > begin && is_space(s[end - 1])) --end;
  return s.substr(begin, end - begin);
}

std::string trim_copy(std::string_view s) { return std::string(trim(s)); }

std::vector<std::string> split(std::string_view s, std::string_view delim) {
  std::vector<std::string> parts;
  if (delim.empty()) {
    parts.emplace_back(s);
    return parts;
  }
  size_t start = 0;
  while (true) {
    size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      break;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + delim.size();
  }
  return parts;
}

std::string join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

bool contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> read_lines(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void write_file_atomic(const std::string &path, std::string_view contents) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  std::string tmp = path + ".tmp." + std::to_string(::getpid()) + "." +
                    std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIoError, "cannot write " + tmp);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorKind::kIoError, "short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::kIoError, "rename failed for " + path);
  }
}

void append_line(const std::string &path, std::string_view line) {
  std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw Error(ErrorKind::kIoError, "cannot append to " + path);
  std::string buf(line);
  buf.push_back('\n');
  const char *p = buf.data();
  size_t left = buf.size();
  while (left > 0) {
    ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      ::close(fd);
      throw Error(ErrorKind::kIoError, "write failed for " + path);
    }
    p += n;
    left -= static_cast<size_t>(n);
  }
  ::close(fd);
}

std::string data_path(std::string_view relative) {
  const char *env = std::getenv("M2T_DATA_DIR");
  std::string base = env != nullptr ? env : M2T_DATA_DIR;
  return base + "/" + std::string(relative);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string out(buf);
  if (out == "-0.00" || out == "-0.0" || out == "-0") out.erase(0, 1);
  return out;
}

}  // namespace m2t

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

#include "m2t/normalize.h"

#include "m2t/text.h"

namespace m2t {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         c >= 0x80;
}

const char *kOnes[] = {"",        "one",     "two",       "three",    "four",
                       "five",    "six",     "seven",     "eight",    "nine",
                       "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
                       "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
const char *kTens[] = {"",      "",      "twenty",  "thirty", "forty",
                       "fifty", "sixty", "seventy", "eighty", "ninety"};

// 1..99
std::string two_digits(int n) {
  if (n < 20) return kOnes[n];
  std::string s = kTens[n / 10];
  if (n % 10) s += std::string(" ") + kOnes[n % 10];
  return s;
}

}  // namespace

std::string normalize_text(std::string_view text) {
  // Map U+2019 / U+2018 to an ASCII apostrophe first.
  std::string in;
  in.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        (static_cast<unsigned char>(text[i + 2]) == 0x98 ||
         static_cast<unsigned char>(text[i + 2]) == 0x99)) {
      in.push_back('\'');
      i += 2;
      continue;
    }
    in.push_back(text[i]);
  }
  std::string out;
  out.reserve(in.size());
  for (size_t i = 0; i < in.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(in[i]);
    if (is_word_byte(c)) {
      out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
      continue;
    }
    bool between = i > 0 && i + 1 < in.size() &&
                   is_word_byte(static_cast<unsigned char>(in[i - 1])) &&
                   is_word_byte(static_cast<unsigned char>(in[i + 1]));
    if (between && (c == '\'' || c == '-')) {
      out.push_back(static_cast<char>(c));
    } else if (between && (c == '.' || c == ',')) {
      // dropped
    } else if (out.empty() || out.back() != ' ') {
      out.push_back(' ');
    }
  }
  return trim_copy(out);
}

std::vector<std::string> match_tokens(std::string_view text) {
  std::string n = normalize_text(text);
  for (char &c : n) {
    if (c == '-') c = ' ';
  }
  std::vector<std::string> tokens;
  for (const std::string &t : split(n, " ")) {
    if (!t.empty()) tokens.push_back(t);
  }
  return tokens;
}

bool phrase_occurs(const std::vector<std::string> &haystack,
                   const std::vector<std::string> &needle, size_t *at) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool ok = true;
    for (size_t j = 0; j < needle.size() && ok; ++j) {
      const std::string &h = haystack[i + j];
      const std::string &n = needle[j];
      if (h == n) continue;
      if (j + 1 == needle.size() && h.size() > n.size() && starts_with(h, n)) {
        std::string_view rest = std::string_view(h).substr(n.size());
        if (rest == "s" || rest == "es" || rest == "'s") continue;
      }
      ok = false;
    }
    if (ok) {
      if (at != nullptr) *at = i;
      return true;
    }
  }
  return false;
}

std::vector<std::string> year_spellings(std::string_view year) {
  if (year.size() != 4) return {};
  for (char c : year) {
    if (c < '0' || c > '9') return {};
  }
  int y = std::stoi(std::string(year));
  if (y < 1100 || y > 2099) return {};
  int hi = y / 100, lo = y % 100;
  std::vector<std::string> out;
  if (y >= 2000 && y < 2100) {
    std::string base = "two thousand";
    out.push_back(lo == 0 ? base : base + " " + two_digits(lo));
    if (lo != 0) out.push_back(base + " and " + two_digits(lo));
    if (lo >= 10) out.push_back("twenty " + two_digits(lo));
  } else {
    std::string head = two_digits(hi);
    if (lo == 0) {
      out.push_back(head + " hundred");
    } else if (lo < 10) {
      out.push_back(head + " oh " + two_digits(lo));
      out.push_back(head + " hundred and " + two_digits(lo));
    } else {
      out.push_back(head + " " + two_digits(lo));
    }
  }
  return out;
}

}  // namespace m2t

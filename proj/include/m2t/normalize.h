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

#ifndef M2T_NORMALIZE_H_
#define M2T_NORMALIZE_H_

#include <string>
#include <string_view>
#include <vector>

namespace m2t {

// Case-folds ASCII, maps typographic apostrophes to "'", drops "." and ","
// between two alphanumerics ("40,000" -> "40000"), keeps "'" and "-" between
// alphanumerics, turns any other punctuation into a space, and collapses
// whitespace. Bytes >= 0x80 are kept as word characters.
std::string normalize_text(std::string_view text);

// normalize_text with hyphens folded to spaces, split into tokens.
std::vector<std::string> match_tokens(std::string_view text);

// True when `needle` occurs as a run of whole tokens in `haystack`. The last
// needle token also matches with an "s", "es" or "'s" suffix. On success
// `*at` receives the index of the first matching token.
bool phrase_occurs(const std::vector<std::string> &haystack,
                   const std::vector<std::string> &needle, size_t *at = nullptr);

// Spelled-out English forms of a four-digit year ("1970" -> "nineteen
// seventy"); empty when `year` is not a year in [1100, 2099].
std::vector<std::string> year_spellings(std::string_view year);

}  // namespace m2t

#endif  // M2T_NORMALIZE_H_

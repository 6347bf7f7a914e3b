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

#ifndef M2T_LEXICON_H_
#define M2T_LEXICON_H_

#include <map>
#include <string>
#include <vector>

namespace m2t {

// Acceptable surface variants for MR values, loaded from data/lexicon.json.
// Keys are case-folded; every variant list returned starts with the value
// itself.
class Lexicon {
 public:
  Lexicon() = default;  // verbatim matching only

  static Lexicon load(const std::string &path);
  static Lexicon load_default();
  static Lexicon from_json_text(const std::string &text);

  std::vector<std::string> object_variants(const std::string &object) const;
  std::vector<std::string> value_variants(const std::string &attribute,
                                          const std::string &value) const;

  bool is_boolean(const std::string &attribute) const;
  // Keywords for a yes/no slot; empty when the attribute or value is unknown.
  std::vector<std::string> boolean_keywords(const std::string &attribute,
                                            const std::string &value) const;
  // Keywords for a slot with no values. Unknown attributes fall back to the
  // attribute name with underscores as spaces.
  std::vector<std::string> empty_keywords(const std::string &attribute) const;

  bool has_object_entry(const std::string &object) const;
  bool has_value_entry(const std::string &attribute, const std::string &value) const;

 private:
  std::map<std::string, std::vector<std::string>> objects_;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> values_;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> booleans_;
  std::map<std::string, std::vector<std::string>> empty_;
};

}  // namespace m2t

#endif  // M2T_LEXICON_H_

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

#ifndef M2T_TEMPLATE_BANK_H_
#define M2T_TEMPLATE_BANK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "m2t/mr.h"

namespace m2t {

// A surface template over an ordered relation signature. Placeholders are
// {subject_i} / {object_i} with 1-based i. links[i] names the placeholder
// that supplies triple i's subject ("" for a fresh entity), e.g. the
// song+genre template links triple 2's subject to "object_1".
struct Template {
  std::string id;
  std::string topic;
  std::vector<std::string> relation_signature;
  std::vector<std::string> links;
  std::string surface;
  std::string paraphrase_group;
  bool asks_question = false;
  bool canonical = false;  // surface appears verbatim in the source figures
  bool corpus = false;     // category used by generate_corpus
  std::string provenance;
};

class TemplateBank {
 public:
  TemplateBank() = default;
  explicit TemplateBank(std::vector<Template> templates);

  static TemplateBank load(const std::string &path);
  static TemplateBank load_default();
  static TemplateBank from_json_text(const std::string &text);

  const std::vector<Template> &templates() const { return templates_; }
  bool empty() const { return templates_.empty(); }

  // Paraphrase groups flagged for the synthetic corpus, in bank order.
  std::vector<std::string> corpus_categories() const;
  std::vector<const Template *> group(const std::string &paraphrase_group) const;

  // Templates whose signature and links fit the MR, grouped by paraphrase
  // group in bank order; empty when nothing matches.
  std::vector<const Template *> matching(const KgMr &mr) const;

 private:
  void validate() const;
  std::vector<Template> templates_;
};

// Fills a template's placeholders from an MR. Does not check the signature.
std::string fill_template(const Template &tmpl, const KgMr &mr);

// Realizes the MR with the first paraphrase group whose signature matches;
// the paraphrase is picked uniformly within the group, deterministically in
// choice_seed. Throws Error(kNoTemplateForSignature).
std::string realize(const KgMr &mr, const TemplateBank &bank,
                    uint64_t choice_seed, const Template **chosen = nullptr);

}  // namespace m2t

#endif  // M2T_TEMPLATE_BANK_H_

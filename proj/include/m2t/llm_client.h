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

#ifndef M2T_LLM_CLIENT_H_
#define M2T_LLM_CLIENT_H_

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "m2t/template_bank.h"

namespace m2t {

struct CompletionParams {
  double temperature = 0.7;
  size_t max_tokens = 80;
  std::vector<std::string> stop_sequences;
  size_t num_candidates = 1;
  std::string backend_id;
};

// Canonical JSON of the params (fixed field order).
std::string params_json(const CompletionParams &params);

// SHA-256 over (backend_id, prompt, params).
std::string cache_key(const std::string &backend_id, const std::string &prompt,
                      const CompletionParams &params);

// Cuts `text` at the earliest stop sequence.
std::string truncate_at_stop(const std::string &text,
                             const std::vector<std::string> &stops);

struct GenerationRecord {
  std::string cache_key;
  std::string backend_id;
  std::string prompt;
  CompletionParams params;
  std::vector<std::string> candidates;
  double latency_ms = 0;
  std::string created_at;  // UTC, ISO 8601
  // Optional item metadata supplied by the caller.
  std::string mr;     // serialized test MR
  std::string topic;

  std::string to_json_line() const;
  static GenerationRecord from_json_line(const std::string &line);
};

// Item keys address one candidate: "<cache_key>:<index>".
std::string item_key(const std::string &cache_key, size_t index);

// Append-only JSONL store keyed by cache_key. Field order per line:
// cache_key, backend_id, prompt, params, candidates, latency_ms, created_at,
// mr, topic. Concurrent readers, one writer at a time.
class GenerationStore {
 public:
  // Loads `path` if it exists; appends create it.
  explicit GenerationStore(std::string path);
  // Throws StoreMissing when `path` does not exist.
  static std::unique_ptr<GenerationStore> open_existing(const std::string &path);

  std::optional<GenerationRecord> find(const std::string &key) const;
  // No-op when the key is already stored.
  void append(const GenerationRecord &record);
  std::vector<GenerationRecord> records() const;  // file order
  const std::string &path() const { return path_; }

 private:
  std::string path_;
  mutable std::shared_mutex mu_;
  std::vector<GenerationRecord> records_;
  std::map<std::string, size_t> index_;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string id() const = 0;
  // Raw candidates. Transient failures throw EndpointUnavailable, permanent
  // ones BackendError or AuthMissing.
  virtual std::vector<std::string> complete(const std::string &prompt,
                                            const CompletionParams &params) = 0;
};

// Offline backend: realizes the prompt's final MR line with the template bank
// (KG) or the canonical dialogue-act realizer (Viggo).
class MockBackend : public Backend {
 public:
  explicit MockBackend(std::string id = "mock",
                       TemplateBank bank = TemplateBank::load_default());
  std::string id() const override { return id_; }
  std::vector<std::string> complete(const std::string &prompt,
                                    const CompletionParams &params) override;

 private:
  std::string id_;
  TemplateBank bank_;
};

// Last MR line of a prompt in either format, marker stripped.
std::string final_mr_line(const std::string &prompt,
                          const std::string &prompt_marker = "[PROMPT]:");

// Declarative HTTP adapter. Field names are JSON paths ("a.b"); "$" is the
// response root.
struct HttpBackendConfig {
  std::string id;
  std::string endpoint;
  std::string api_key_env;  // empty: no auth
  std::string auth_header = "Authorization";
  std::string auth_template = "Bearer {key}";
  std::map<std::string, std::string> headers;
  // Request field names; an empty name omits the field.
  std::string prompt_field = "prompt";
  std::string temperature_field = "temperature";
  std::string max_tokens_field = "max_tokens";
  std::string stop_field = "stop";
  std::string n_field = "n";  // empty: one request per candidate
  std::string extra_json = "{}";  // merged into every request body
  // Response: array of candidates at candidates_path, text at text_path
  // inside each element.
  std::string candidates_path = "choices";
  std::string text_path = "text";
  int timeout_ms = 60000;
};

HttpBackendConfig http_backend_config_from_json(const std::string &json_text);

class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  std::string id() const override { return config_.id; }
  std::vector<std::string> complete(const std::string &prompt,
                                    const CompletionParams &params) override;
  const HttpBackendConfig &config() const { return config_; }

 private:
  std::vector<std::string> request(const std::string &prompt,
                                   const CompletionParams &params, size_t n);
  HttpBackendConfig config_;
};

// Backend registry file: {"backends": [{"id": ..., "type": "mock"|"http",
// ...http fields}]}. Without a file, "mock" and "mock-alt" are available.
std::shared_ptr<Backend> make_backend(const std::string &id,
                                      const std::string &registry_path = "");
std::vector<std::string> registry_ids(const std::string &registry_path);

struct ClientOptions {
  size_t max_retries = 3;
  int backoff_initial_ms = 250;
  double backoff_factor = 2.0;
  int backoff_max_ms = 8000;
  size_t rate_limit = 0;  // requests per window; 0 disables
  int rate_window_ms = 1000;
  size_t budget = 0;      // backend requests; 0 is unlimited
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to sleep_for
};

// Shareable across threads. Identical concurrent calls are coalesced; store
// hits skip the backend.
class CompletionClient {
 public:
  CompletionClient(std::shared_ptr<Backend> backend, GenerationStore *store,
                   ClientOptions options = ClientOptions());

  GenerationRecord complete(const std::string &prompt, CompletionParams params,
                            const std::string &mr = "", const std::string &topic = "");

  const Backend &backend() const { return *backend_; }
  size_t backend_requests() const;
  size_t cache_hits() const;

 private:
  GenerationRecord generate(const std::string &key, const std::string &prompt,
                            const CompletionParams &params, const std::string &mr,
                            const std::string &topic);
  void admit();  // budget and rate limit

  std::shared_ptr<Backend> backend_;
  GenerationStore *store_;
  ClientOptions options_;
  mutable std::mutex mu_;
  std::mutex rate_mu_;
  std::map<std::string, std::shared_future<GenerationRecord>> in_flight_;
  std::map<std::string, GenerationRecord> memory_;  // when no store is given
  std::deque<std::chrono::steady_clock::time_point> window_;
  size_t requests_ = 0;
  size_t hits_ = 0;
};

}  // namespace m2t

#endif  // M2T_LLM_CLIENT_H_

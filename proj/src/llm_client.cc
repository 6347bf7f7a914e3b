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

#include "m2t/llm_client.h"

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <json.hpp>
#include <thread>

#include "m2t/digest.h"
#include "m2t/error.h"
#include "m2t/http.h"
#include "m2t/mr_format.h"
#include "m2t/text.h"
#include "m2t/viggo_realizer.h"

namespace m2t {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json params_to_json(const CompletionParams &p) {
  ordered_json j;
  j["backend_id"] = p.backend_id;
  j["temperature"] = p.temperature;
  j["max_tokens"] = p.max_tokens;
  j["stop_sequences"] = p.stop_sequences;
  j["num_candidates"] = p.num_candidates;
  return j;
}

CompletionParams params_from_json(const json &j) {
  CompletionParams p;
  p.backend_id = j.at("backend_id").get<std::string>();
  p.temperature = j.at("temperature").get<double>();
  p.max_tokens = j.at("max_tokens").get<size_t>();
  p.stop_sequences = j.at("stop_sequences").get<std::vector<std::string>>();
  p.num_candidates = j.at("num_candidates").get<size_t>();
  return p;
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const json *at_path(const json &root, const std::string &path) {
  if (path.empty() || path == "$") return &root;
  const json *cur = &root;
  for (const std::string &part : split(path, ".")) {
    if (cur->is_object() && cur->contains(part)) {
      cur = &(*cur)[part];
    } else if (cur->is_array() && !part.empty() &&
               part.find_first_not_of("0123456789") == std::string::npos &&
               std::stoul(part) < cur->size()) {
      cur = &(*cur)[std::stoul(part)];
    } else {
      return nullptr;
    }
  }
  return cur;
}

void set_path(json &root, const std::string &path, json value) {
  json *cur = &root;
  std::vector<std::string> parts = split(path, ".");
  for (size_t i = 0; i + 1 < parts.size(); ++i) cur = &(*cur)[parts[i]];
  (*cur)[parts.back()] = std::move(value);
}

std::string generic_kg_sentence(const KgMr &mr) {
  std::vector<std::string> parts;
  for (const Triple &t : mr.triples) {
    parts.push_back(t.subject + "'s " + t.relation + " is " + t.object + ".");
  }
  return join(parts, " ");
}

}  // namespace

std::string params_json(const CompletionParams &params) {
  return params_to_json(params).dump();
}

std::string cache_key(const std::string &backend_id, const std::string &prompt,
                      const CompletionParams &params) {
  CompletionParams p = params;
  p.backend_id = backend_id;
  ordered_json j = ordered_json::array({backend_id, prompt, params_to_json(p)});
  return sha256_hex(j.dump());
}

std::string truncate_at_stop(const std::string &text,
                             const std::vector<std::string> &stops) {
  size_t cut = text.size();
  for (const std::string &s : stops) {
    if (s.empty()) continue;
    size_t pos = text.find(s);
    if (pos != std::string::npos) cut = std::min(cut, pos);
  }
  return text.substr(0, cut);
}

std::string item_key(const std::string &cache_key, size_t index) {
  return cache_key + ":" + std::to_string(index);
}

std::string GenerationRecord::to_json_line() const {
  ordered_json j;
  j["cache_key"] = cache_key;
  j["backend_id"] = backend_id;
  j["prompt"] = prompt;
  j["params"] = params_to_json(params);
  j["candidates"] = candidates;
  j["latency_ms"] = latency_ms;
  j["created_at"] = created_at;
  j["mr"] = mr;
  j["topic"] = topic;
  return j.dump();
}

GenerationRecord GenerationRecord::from_json_line(const std::string &line) {
  GenerationRecord r;
  try {
    json j = json::parse(line);
    r.cache_key = j.at("cache_key").get<std::string>();
    r.backend_id = j.at("backend_id").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.params = params_from_json(j.at("params"));
    r.candidates = j.at("candidates").get<std::vector<std::string>>();
    r.latency_ms = j.value("latency_ms", 0.0);
    r.created_at = j.value("created_at", "");
    r.mr = j.value("mr", "");
    r.topic = j.value("topic", "");
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kValidationError, std::string("generation record: ") + e.what());
  }
  return r;
}

GenerationStore::GenerationStore(std::string path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  for (const std::string &line : read_lines(path_)) {
    if (trim(line).empty()) continue;
    GenerationRecord r = GenerationRecord::from_json_line(line);
    if (index_.count(r.cache_key)) continue;
    index_[r.cache_key] = records_.size();
    records_.push_back(std::move(r));
  }
}

std::unique_ptr<GenerationStore> GenerationStore::open_existing(const std::string &path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorKind::kStoreMissing, path);
  }
  return std::make_unique<GenerationStore>(path);
}

std::optional<GenerationRecord> GenerationStore::find(const std::string &key) const {
  std::shared_lock lock(mu_);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return records_[it->second];
}

void GenerationStore::append(const GenerationRecord &record) {
  std::unique_lock lock(mu_);
  if (index_.count(record.cache_key)) return;
  append_line(path_, record.to_json_line());
  index_[record.cache_key] = records_.size();
  records_.push_back(record);
}

std::vector<GenerationRecord> GenerationStore::records() const {
  std::shared_lock lock(mu_);
  return records_;
}

// ---------------------------------------------------------------------------

std::string final_mr_line(const std::string &prompt, const std::string &prompt_marker) {
  std::vector<std::string> lines = split(prompt, "\n");
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    std::string_view line = trim(*it);
    if (line.empty()) continue;
    if (starts_with(line, prompt_marker)) return trim_copy(line.substr(prompt_marker.size()));
    // A bare answer marker such as "[SENTENCE]:" ends QA prompts.
    if (line.front() == '[' && line.back() == ':' && line.find(']') == line.size() - 2) continue;
    return std::string(line);
  }
  return "";
}

MockBackend::MockBackend(std::string id, TemplateBank bank)
    : id_(std::move(id)), bank_(std::move(bank)) {}

std::vector<std::string> MockBackend::complete(const std::string &prompt,
                                               const CompletionParams &params) {
  std::string line = final_mr_line(prompt);
  MeaningRepresentation mr;
  try {
    if (line.empty()) throw Error(ErrorKind::kSyntaxError, "no MR line");
    mr = parse_any_mr(line);
  } catch (const Error &e) {
    throw Error(ErrorKind::kUnparsableTestMr, e.what());
  }
  std::vector<std::string> out;
  for (size_t i = 0; i < params.num_candidates; ++i) {
    if (const auto *kg = std::get_if<KgMr>(&mr)) {
      uint64_t seed = stable_hash(prompt + "\x1f" + params_json(params) + "\x1f" + id_, i);
      try {
        out.push_back(realize(*kg, bank_, seed));
      } catch (const Error &e) {
        if (e.kind() != ErrorKind::kNoTemplateForSignature) throw;
        out.push_back(generic_kg_sentence(*kg));
      }
    } else {
      out.push_back(realize_viggo(std::get<ViggoMr>(mr)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

HttpBackendConfig http_backend_config_from_json(const std::string &json_text) {
  HttpBackendConfig c;
  try {
    json j = json::parse(json_text);
    c.id = j.at("id").get<std::string>();
    c.endpoint = j.at("endpoint").get<std::string>();
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    c.auth_header = j.value("auth_header", c.auth_header);
    c.auth_template = j.value("auth_template", c.auth_template);
    if (j.contains("headers")) c.headers = j.at("headers").get<std::map<std::string, std::string>>();
    c.prompt_field = j.value("prompt_field", c.prompt_field);
    c.temperature_field = j.value("temperature_field", c.temperature_field);
    c.max_tokens_field = j.value("max_tokens_field", c.max_tokens_field);
    c.stop_field = j.value("stop_field", c.stop_field);
    c.n_field = j.value("n_field", c.n_field);
    if (j.contains("extra")) c.extra_json = j.at("extra").dump();
    c.candidates_path = j.value("candidates_path", c.candidates_path);
    c.text_path = j.value("text_path", c.text_path);
    c.timeout_ms = j.value("timeout_ms", c.timeout_ms);
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kConfigError, std::string("backend config: ") + e.what());
  }
  if (c.prompt_field.empty()) throw Error(ErrorKind::kConfigError, c.id + ": prompt_field is required");
  return c;
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {}

std::vector<std::string> HttpBackend::request(const std::string &prompt,
                                              const CompletionParams &params, size_t n) {
  json body = json::parse(config_.extra_json);
  set_path(body, config_.prompt_field, prompt);
  if (!config_.temperature_field.empty()) set_path(body, config_.temperature_field, params.temperature);
  if (!config_.max_tokens_field.empty()) set_path(body, config_.max_tokens_field, params.max_tokens);
  if (!config_.stop_field.empty() && !params.stop_sequences.empty()) {
    set_path(body, config_.stop_field, params.stop_sequences);
  }
  if (!config_.n_field.empty()) set_path(body, config_.n_field, n);

  HttpRequest req;
  req.url = config_.endpoint;
  req.body = body.dump();
  req.timeout_ms = config_.timeout_ms;
  req.headers = config_.headers;
  if (!config_.api_key_env.empty()) {
    const char *key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw Error(ErrorKind::kAuthMissing, "environment variable " + config_.api_key_env +
                                               " is not set for backend " + config_.id);
    }
    std::string value = config_.auth_template;
    size_t pos = value.find("{key}");
    if (pos != std::string::npos) value.replace(pos, 5, key);
    req.headers[config_.auth_header] = value;
  }
  HttpResponse resp = http_send(req);
  if (resp.status == 429 || resp.status >= 500) {
    throw Error(ErrorKind::kEndpointUnavailable,
                config_.id + " returned HTTP " + std::to_string(resp.status));
  }
  if (resp.status != 200) {
    throw Error(ErrorKind::kBackendError,
                config_.id + " returned HTTP " + std::to_string(resp.status));
  }
  std::vector<std::string> out;
  try {
    json j = json::parse(resp.body);
    const json *cands = at_path(j, config_.candidates_path);
    if (cands == nullptr || !cands->is_array()) {
      throw Error(ErrorKind::kBackendError, config_.id + ": no candidates at " + config_.candidates_path);
    }
    for (const json &c : *cands) {
      const json *text = at_path(c, config_.text_path);
      if (text == nullptr || !text->is_string()) {
        throw Error(ErrorKind::kBackendError, config_.id + ": no text at " + config_.text_path);
      }
      out.push_back(text->get<std::string>());
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kBackendError, config_.id + ": malformed response: " + e.what());
  }
  return out;
}

std::vector<std::string> HttpBackend::complete(const std::string &prompt,
                                               const CompletionParams &params) {
  if (!config_.n_field.empty()) return request(prompt, params, params.num_candidates);
  std::vector<std::string> out;
  for (size_t i = 0; i < params.num_candidates; ++i) {
    for (std::string &c : request(prompt, params, 1)) out.push_back(std::move(c));
  }
  return out;
}

std::shared_ptr<Backend> make_backend(const std::string &id,
                                      const std::string &registry_path) {
  if (!registry_path.empty()) {
    json doc;
    try {
      doc = json::parse(read_file(registry_path));
    } catch (const json::exception &e) {
      throw Error(ErrorKind::kConfigError, std::string("backend registry: ") + e.what());
    }
    for (const json &b : doc.at("backends")) {
      if (b.value("id", "") != id) continue;
      std::string type = b.value("type", "http");
      if (type == "mock") {
        return std::make_shared<MockBackend>(
            id, b.contains("templates") ? TemplateBank::load(b.at("templates").get<std::string>())
                                        : TemplateBank::load_default());
      }
      return std::make_shared<HttpBackend>(http_backend_config_from_json(b.dump()));
    }
  }
  if (id == "mock" || id == "mock-alt") return std::make_shared<MockBackend>(id);
  throw Error(ErrorKind::kConfigError, "unknown backend: " + id);
}

std::vector<std::string> registry_ids(const std::string &registry_path) {
  std::vector<std::string> out;
  json doc = json::parse(read_file(registry_path));
  for (const json &b : doc.at("backends")) out.push_back(b.at("id").get<std::string>());
  return out;
}

// ---------------------------------------------------------------------------

CompletionClient::CompletionClient(std::shared_ptr<Backend> backend,
                                   GenerationStore *store, ClientOptions options)
    : backend_(std::move(backend)), store_(store), options_(std::move(options)) {
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

size_t CompletionClient::backend_requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

size_t CompletionClient::cache_hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

void CompletionClient::admit() {
  {
    std::lock_guard lock(mu_);
    if (options_.budget > 0 && requests_ >= options_.budget) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "request budget of " + std::to_string(options_.budget) + " reached");
    }
    ++requests_;
  }
  if (options_.rate_limit == 0) return;
  std::lock_guard rate_lock(rate_mu_);
  auto window = std::chrono::milliseconds(options_.rate_window_ms);
  for (;;) {
    auto now = std::chrono::steady_clock::now();
    while (!window_.empty() && now - window_.front() >= window) window_.pop_front();
    if (window_.size() < options_.rate_limit) {
      window_.push_back(now);
      return;
    }
    auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(
                    window_.front() + window - now) +
                std::chrono::milliseconds(1);
    options_.sleep(wait);
  }
}

GenerationRecord CompletionClient::generate(const std::string &key,
                                            const std::string &prompt,
                                            const CompletionParams &params,
                                            const std::string &mr,
                                            const std::string &topic) {
  int delay = options_.backoff_initial_ms;
  for (size_t attempt = 0;; ++attempt) {
    admit();
    auto start = std::chrono::steady_clock::now();
    try {
      std::vector<std::string> raw = backend_->complete(prompt, params);
      auto end = std::chrono::steady_clock::now();
      GenerationRecord r;
      r.cache_key = key;
      r.backend_id = backend_->id();
      r.prompt = prompt;
      r.params = params;
      for (size_t i = 0; i < raw.size() && i < params.num_candidates; ++i) {
        r.candidates.push_back(trim_copy(truncate_at_stop(raw[i], params.stop_sequences)));
      }
      r.latency_ms = std::chrono::duration<double, std::milli>(end - start).count();
      r.created_at = utc_now();
      r.mr = mr;
      r.topic = topic;
      return r;
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::kEndpointUnavailable) throw;
      if (attempt >= options_.max_retries) {
        throw Error(ErrorKind::kBackendError,
                    backend_->id() + " failed after " + std::to_string(attempt + 1) +
                        " attempts: " + e.what());
      }
      options_.sleep(std::chrono::milliseconds(delay));
      delay = std::min(options_.backoff_max_ms,
                       static_cast<int>(delay * options_.backoff_factor));
    }
  }
}

GenerationRecord CompletionClient::complete(const std::string &prompt,
                                            CompletionParams params,
                                            const std::string &mr,
                                            const std::string &topic) {
  if (prompt.empty()) throw Error(ErrorKind::kValidationError, "empty prompt");
  if (params.num_candidates == 0) {
    throw Error(ErrorKind::kValidationError, "num_candidates must be at least 1");
  }
  if (params.temperature < 0) throw Error(ErrorKind::kValidationError, "negative temperature");
  params.backend_id = backend_->id();
  std::string key = cache_key(params.backend_id, prompt, params);

  std::promise<GenerationRecord> promise;
  std::shared_future<GenerationRecord> shared;
  {
    std::lock_guard lock(mu_);
    if (store_ != nullptr) {
      if (auto hit = store_->find(key)) {
        ++hits_;
        return *hit;
      }
    } else if (auto it = memory_.find(key); it != memory_.end()) {
      ++hits_;
      return it->second;
    }
    auto it = in_flight_.find(key);
    if (it != in_flight_.end()) {
      ++hits_;
      shared = it->second;
    } else {
      in_flight_[key] = promise.get_future().share();
    }
  }
  if (shared.valid()) return shared.get();

  try {
    GenerationRecord r = generate(key, prompt, params, mr, topic);
    if (store_ != nullptr) store_->append(r);
    std::lock_guard lock(mu_);
    if (store_ == nullptr) memory_[key] = r;
    in_flight_.erase(key);
    promise.set_value(r);
    return r;
  } catch (...) {
    std::lock_guard lock(mu_);
    in_flight_.erase(key);
    promise.set_exception(std::current_exception());
    throw;
  }
}

}  // namespace m2t

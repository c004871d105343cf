// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/llm/gateway.hpp"

#include <cstdlib>
#include <thread>

#include <spdlog/spdlog.h>

#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"

namespace defexam::llm {

Gateway::Gateway(GatewayConfig config, std::shared_ptr<HttpTransport> transport, Sleeper sleeper)
    : config_(std::move(config)), transport_(std::move(transport)), sleeper_(std::move(sleeper)) {
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (config_.max_in_flight < 1) throw Error(ErrorKind::kConfig, "max_in_flight must be >= 1");
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
  }
}

const std::string& Gateway::model_for(const std::string& role) const {
  auto it = config_.models.find(role);
  if (it == config_.models.end() || it->second.empty()) {
    throw Error(ErrorKind::kConfig, "no model configured for role '" + role + "'");
  }
  return it->second;
}

std::filesystem::path Gateway::cache_path(const std::string& key) const {
  return config_.cache_dir / key.substr(0, 2) / (key + ".json");
}

void Gateway::acquire() {
  std::unique_lock lock(slots_mutex_);
  slots_cv_.wait(lock, [&] { return in_flight_ < config_.max_in_flight; });
  ++in_flight_;
  max_observed_in_flight_ = std::max(max_observed_in_flight_, in_flight_);
}

void Gateway::release() {
  {
    std::lock_guard lock(slots_mutex_);
    --in_flight_;
  }
  slots_cv_.notify_one();
}

std::string Gateway::fetch(const ChatRequest& request) {
  const auto body = fs::dump_compact(request.to_wire());
  HttpHeaders headers;
  if (!api_key_.empty()) headers.emplace_back("Authorization", "Bearer " + api_key_);

  HttpResponse response;
  for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
    sleeper_(config_.retry.backoff_before(attempt));
    acquire();
    try {
      response = transport_->post(config_.completions_path, body, "application/json", headers);
    } catch (...) {
      release();
      throw;
    }
    release();
    ++network_requests_;
    spdlog::debug("llm call model={} attempt={} status={}", request.model, attempt,
                  response.status);
    if (response.status >= 200 && response.status < 300) return response.body;
    if (!is_transient_status(response.status)) break;
    spdlog::warn("llm endpoint returned {} (attempt {}/{}){}", response.status, attempt,
                 config_.retry.max_attempts,
                 response.error.empty() ? "" : ": " + response.error);
  }
  throw NetworkError(response.status, "LLM request failed with status " +
                                          std::to_string(response.status) +
                                          (response.error.empty() ? "" : ": " + response.error));
}

AssistantMessage Gateway::complete(const ChatRequest& request) {
  ++completions_;
  const bool caching = !config_.cache_dir.empty();
  const auto key = request.cache_key();
  if (caching) {
    const auto path = cache_path(key);
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
      try {
        auto message = parse_completion(fs::read_file(path));
        ++cache_hits_;
        return message;
      } catch (const Error& e) {
        spdlog::warn("discarding unreadable cache entry {}: {}", path.string(), e.what());
      }
    }
  }
  const auto body = fetch(request);
  auto message = parse_completion(body);
  if (caching) fs::write_file_atomic(cache_path(key), body);
  return message;
}

GradeDistribution Gateway::grade_distribution(const ChatRequest& request) {
  if (request.top_logprobs <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "grade requests must ask for top log-probabilities");
  }
  return grade_distribution_from(complete(request));
}

GatewayStats Gateway::stats() const {
  GatewayStats s;
  s.network_requests = network_requests_.load();
  s.cache_hits = cache_hits_.load();
  s.completions = completions_.load();
  {
    std::lock_guard lock(slots_mutex_);
    s.max_observed_in_flight = max_observed_in_flight_;
  }
  return s;
}

}  // namespace defexam::llm

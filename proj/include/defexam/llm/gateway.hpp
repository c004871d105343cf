// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "defexam/common/http.hpp"
#include "defexam/common/retry.hpp"
#include "defexam/llm/chat.hpp"

namespace defexam::llm {

struct GatewayConfig {
  std::string endpoint = "http://localhost:8000";
  std::string completions_path = "/v1/chat/completions";
  std::string api_key_env = "OPENAI_API_KEY";
  std::map<std::string, std::string> models;  // role (extractor, agent, judge) -> model
  int max_in_flight = 4;
  RetryPolicy retry;
  std::filesystem::path cache_dir;  // empty: caching disabled
};

struct GatewayStats {
  long network_requests = 0;  // HTTP attempts, including retries
  long cache_hits = 0;
  long completions = 0;
  int max_observed_in_flight = 0;
};

/// Single chokepoint for LLM traffic: content-addressed response cache,
/// bounded in-flight requests, and retries on transient failures. Safe to
/// share between threads.
class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  Gateway(GatewayConfig config, std::shared_ptr<HttpTransport> transport,
          Sleeper sleeper = nullptr);

  AssistantMessage complete(const ChatRequest& request);

  /// Completes `request` (which must ask for top log-probabilities) and
  /// extracts the grade distribution from the reply.
  GradeDistribution grade_distribution(const ChatRequest& request);

  /// Model configured for a role; throws a config error when absent.
  const std::string& model_for(const std::string& role) const;

  GatewayStats stats() const;
  const GatewayConfig& config() const { return config_; }

 private:
  std::string fetch(const ChatRequest& request);
  std::filesystem::path cache_path(const std::string& key) const;
  void acquire();
  void release();

  GatewayConfig config_;
  std::shared_ptr<HttpTransport> transport_;
  Sleeper sleeper_;
  std::string api_key_;

  mutable std::mutex slots_mutex_;
  std::condition_variable slots_cv_;
  int in_flight_ = 0;
  int max_observed_in_flight_ = 0;

  std::atomic<long> network_requests_{0};
  std::atomic<long> cache_hits_{0};
  std::atomic<long> completions_{0};
};

}  // namespace defexam::llm

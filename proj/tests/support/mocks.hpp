// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "defexam/common/http.hpp"
#include "fixture.hpp"

namespace defexam::testing {

// ------------------------------------------------------------ transports

/// In-process transport: every request goes to `handler`.
class FunctionTransport : public HttpTransport {
 public:
  using Handler = std::function<HttpResponse(const std::string& method, const std::string& target,
                                             const std::string& body)>;
  explicit FunctionTransport(Handler handler) : handler_(std::move(handler)) {}

  HttpResponse get(const std::string& target, const HttpHeaders& headers) override;
  HttpResponse post(const std::string& target, const std::string& body, const std::string& content_type,
                    const HttpHeaders& headers) override;

  int calls() const { return calls_.load(); }
  HttpHeaders last_headers() const;

 private:
  Handler handler_;
  std::atomic<int> calls_{0};
  mutable std::mutex mutex_;
  HttpHeaders last_headers_;
};

/// Local HTTP server on 127.0.0.1 with an ephemeral port, serving `handler`
/// on a background thread until destroyed.
class MockHttpServer {
 public:
  explicit MockHttpServer(FunctionTransport::Handler handler);
  ~MockHttpServer();
  MockHttpServer(const MockHttpServer&) = delete;
  MockHttpServer& operator=(const MockHttpServer&) = delete;

  std::string url() const;
  int requests() const { return requests_.load(); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  std::atomic<int> requests_{0};
};

// ------------------------------------------------------------ patent portal

struct PortalMockOptions {
  int fail_first = 0;      // leading requests answered with `fail_status`
  int fail_status = 503;
};

/// Serves search, metadata, document lists and XML downloads for `apps`.
/// `base_url` is the server's own URL, used in download links.
FunctionTransport::Handler portal_handler(std::shared_ptr<const std::vector<FixtureApplication>> apps,
                                          std::shared_ptr<std::string> base_url,
                                          PortalMockOptions options = {});

// ------------------------------------------------------------ chat completions

using LlmResponder = std::function<nlohmann::json(const nlohmann::json& request)>;

/// Chat-completions endpoint backed by `responder`; the responder returns
/// the full response body.
FunctionTransport::Handler llm_handler(LlmResponder responder);

nlohmann::json completion(const std::string& content);
nlohmann::json tool_call_completion(const std::vector<std::pair<std::string, std::string>>& calls,
                                    const std::string& id_prefix = "call");
/// Reply "text" whose first token has the given grade probabilities in its
/// top log-probabilities (zero entries are left out).
nlohmann::json grade_completion(const std::array<double, 5>& p, const std::string& text = "4");

/// Deterministic stand-in for the extractor, agent and judge models over a
/// fixture corpus. Replies depend only on request content.
class ScriptedModel {
 public:
  explicit ScriptedModel(std::shared_ptr<const std::vector<FixtureApplication>> apps);
  nlohmann::json operator()(const nlohmann::json& request) const;

 private:
  nlohmann::json extraction(const nlohmann::json& request) const;
  nlohmann::json agent(const nlohmann::json& request) const;
  nlohmann::json judge(const nlohmann::json& request) const;

  std::shared_ptr<const std::vector<FixtureApplication>> apps_;
  std::map<std::string, const FixtureApplication*> by_message_;
};

/// Scripted agent that chooses each reply at random (tool calls, malformed
/// calls, invalid JSON, schema violations, valid answers) from a seed and
/// the conversation so far.
nlohmann::json fuzzed_agent_reply(std::uint64_t script_seed, const nlohmann::json& request);

/// Pipeline config pointing at the given mock servers.
nlohmann::json mock_pipeline_config(const std::string& portal_url, const std::string& llm_url);

}  // namespace defexam::testing

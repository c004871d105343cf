// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

// OpenAI-compatible chat-completions data model.
namespace defexam::llm {

struct ToolCallRequest {
  std::string id;
  std::string name;
  std::string arguments;  // JSON object as text, exactly as sent by the model

  bool operator==(const ToolCallRequest&) const = default;
};

struct ChatMessage {
  std::string role;  // system, user, assistant, tool
  std::string content;
  std::vector<ToolCallRequest> tool_calls;  // assistant only
  std::string tool_call_id;                 // tool only

  static ChatMessage system(std::string content) { return {"system", std::move(content), {}, {}}; }
  static ChatMessage user(std::string content) { return {"user", std::move(content), {}, {}}; }
  static ChatMessage tool(std::string call_id, std::string content) {
    return {"tool", std::move(content), {}, std::move(call_id)};
  }

  bool operator==(const ChatMessage&) const = default;
};

struct ToolDefinition {
  std::string name;
  std::string description;
  nlohmann::json parameters;  // JSON schema of the arguments object
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  std::vector<ToolDefinition> tools;
  double temperature = 0.0;
  int top_logprobs = 0;  // 0: no log-probabilities requested
  std::optional<int> max_tokens;

  nlohmann::json to_wire() const;

  /// SHA-256 over the canonical wire body; equal content gives equal keys.
  std::string cache_key() const;
};

struct TopLogprob {
  std::string token;
  double logprob = 0.0;
};

struct TokenLogprobs {
  std::string token;
  double logprob = 0.0;
  std::vector<TopLogprob> top;
};

struct AssistantMessage {
  std::string content;
  std::vector<ToolCallRequest> tool_calls;
  std::vector<TokenLogprobs> logprobs;
  std::string finish_reason;

  bool has_tool_calls() const { return !tool_calls.empty(); }
  ChatMessage as_message() const { return {"assistant", content, tool_calls, {}}; }
};

/// Parses a chat-completions response body. Throws a protocol error when the
/// body does not have the expected shape.
AssistantMessage parse_completion(const std::string& body);

/// Unnormalized probabilities of the grade tokens "1".."5".
struct GradeDistribution {
  std::array<double, 5> p{};

  double total() const;
  /// Probability-weighted mean grade, sum(i * p_i) / sum(p_i).
  double weighted_mean() const;
};

/// Reads the grade distribution from the first generated position whose
/// top log-probabilities contain any grade token. Bare ("4") and
/// single-leading-space (" 4") renderings are summed. Throws a protocol error
/// when no grade token is present at any position.
GradeDistribution grade_distribution_from(const AssistantMessage& message);

/// Removes a surrounding Markdown code fence (```json ... ```), if present.
std::string strip_code_fence(const std::string& content);

}  // namespace defexam::llm

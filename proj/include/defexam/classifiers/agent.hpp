// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "defexam/classifiers/verbalized.hpp"
#include "defexam/corpus/types.hpp"
#include "defexam/features/tfidf.hpp"
#include "defexam/llm/gateway.hpp"

namespace defexam::classifiers {

struct ToolCall {
  std::string tool_name;  // get_claim or search_description
  nlohmann::json arguments;
  std::string response_text;

  bool operator==(const ToolCall&) const = default;
};

struct PredictedReason {
  ConfidenceExpression confidence;
  corpus::RejectionReason reason;  // same shape as an annotated reason

  bool operator==(const PredictedReason&) const = default;
};

struct AgentPrediction {
  std::string application_id;
  int claim_number = 0;
  ConfidenceExpression likelihood;
  std::vector<PredictedReason> reasons;
  std::vector<ToolCall> tool_trace;
  int gateway_rounds = 0;
  bool failed = false;  // no schema-valid answer within the round budget
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  double probability() const { return likelihood.probability; }
};

void to_json(nlohmann::json& j, const ToolCall& call);
void from_json(const nlohmann::json& j, ToolCall& call);
void to_json(nlohmann::json& j, const PredictedReason& reason);
void from_json(const nlohmann::json& j, PredictedReason& reason);
void to_json(nlohmann::json& j, const AgentPrediction& prediction);
void from_json(const nlohmann::json& j, AgentPrediction& prediction);

/// The two tools offered to the agent, bound to one application.
class ApplicationTools {
 public:
  explicit ApplicationTools(const corpus::PatentApplication& application, std::size_t top_k = 5);

  std::string get_claim(int claim_number) const;
  std::string search_description(const std::string& query) const;

  /// Dispatches a call by name; malformed arguments produce an explanatory
  /// response rather than an error.
  std::string invoke(const std::string& name, const nlohmann::json& arguments) const;

  static std::vector<llm::ToolDefinition> definitions();

 private:
  const corpus::PatentApplication& application_;
  std::size_t top_k_;
  std::optional<features::TfidfModel> index_;
  std::vector<features::SparseVector> paragraph_vectors_;
};

struct AgentConfig {
  std::string model_role = "agent";
  int max_tool_calls = 10;
  std::size_t search_top_k = 5;
  int max_schema_retries = 2;
  std::optional<int> max_tokens{};
};

std::string render_agent_prompt(const corpus::Claim& claim, const LikelihoodLexicon& lexicon);

/// The answer schema; validate_agent_answer returns its violations.
const nlohmann::json& agent_answer_schema();
std::vector<std::string> validate_agent_answer(const nlohmann::json& answer);

/// Interleaves model turns and tool calls until the model answers. Tool
/// calls beyond max_tool_calls are answered with a budget notice, and the
/// final round is offered no tools, so at most max_tool_calls + 1 gateway
/// rounds are made. Gateway errors propagate.
AgentPrediction run_agent(const corpus::Claim& claim, const corpus::PatentApplication& application,
                          llm::Gateway& gateway, const AgentConfig& config = {},
                          const LikelihoodLexicon& lexicon = LikelihoodLexicon::defaults());

/// Per final category: the highest reason confidence of that category, 0 if none.
std::array<double, corpus::kNumFinalCategories> reason_confidences_to_multilabel(
    const AgentPrediction& prediction);

}  // namespace defexam::classifiers

// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/classifiers/agent.hpp"

#include <algorithm>
#include <numeric>

#include <spdlog/spdlog.h>

#include "defexam/common/assets.hpp"
#include "defexam/common/error.hpp"
#include "defexam/common/json_schema.hpp"
#include "defexam/common/text.hpp"
#include "defexam/corpus/serialization.hpp"
#include "defexam/oa/labels.hpp"
#include "defexam/oa/matching.hpp"

namespace defexam::classifiers {

using nlohmann::json;

namespace {

constexpr std::string_view kBudgetNotice =
    "Tool call limit reached. Do not call any more tools; reply with the final JSON answer now.";
constexpr std::string_view kCorrection =
    "Your answer could not be used: {errors}\n"
    "Reply with only the JSON object described in the output format.";

}  // namespace

void to_json(json& j, const ToolCall& call) {
  j = {{"tool_name", call.tool_name}, {"arguments", call.arguments}, {"response_text", call.response_text}};
}

void from_json(const json& j, ToolCall& call) {
  call.tool_name = j.at("tool_name").get<std::string>();
  call.arguments = j.at("arguments");
  call.response_text = j.at("response_text").get<std::string>();
}

void to_json(json& j, const PredictedReason& reason) {
  j = reason.reason;
  j["confidence"] = reason.confidence.phrase;
  j["confidence_probability"] = reason.confidence.probability;
}

void from_json(const json& j, PredictedReason& reason) {
  reason.reason = j.get<corpus::RejectionReason>();
  reason.confidence = {j.at("confidence").get<std::string>(), j.at("confidence_probability").get<double>()};
}

void to_json(json& j, const AgentPrediction& p) {
  j = {{"application_id", p.application_id},
       {"claim_number", p.claim_number},
       {"likelihood", p.likelihood.phrase},
       {"probability", p.likelihood.probability},
       {"reasons", p.reasons},
       {"tool_trace", p.tool_trace},
       {"gateway_rounds", p.gateway_rounds},
       {"failed", p.failed},
       {"errors", p.errors},
       {"warnings", p.warnings}};
}

void from_json(const json& j, AgentPrediction& p) {
  p.application_id = j.at("application_id").get<std::string>();
  p.claim_number = j.at("claim_number").get<int>();
  p.likelihood = {j.at("likelihood").get<std::string>(), j.at("probability").get<double>()};
  p.reasons = j.at("reasons").get<std::vector<PredictedReason>>();
  p.tool_trace = j.value("tool_trace", std::vector<ToolCall>{});
  p.gateway_rounds = j.value("gateway_rounds", 0);
  p.failed = j.value("failed", false);
  p.errors = j.value("errors", std::vector<std::string>{});
  p.warnings = j.value("warnings", std::vector<std::string>{});
}

ApplicationTools::ApplicationTools(const corpus::PatentApplication& application, std::size_t top_k)
    : application_(application), top_k_(top_k) {
  std::vector<std::string> docs;
  for (const auto& p : application.description_paragraphs) docs.push_back(p);
  if (!docs.empty()) {
    index_ = features::TfidfModel::fit_documents(docs);
    for (const auto& d : docs) paragraph_vectors_.push_back(index_->vectorize(d));
  }
}

std::string ApplicationTools::get_claim(int claim_number) const {
  if (const auto* claim = application_.find_claim(claim_number)) {
    return std::to_string(claim->number) + ". " + claim->text;
  }
  return "Claim " + std::to_string(claim_number) + " does not exist in this application.";
}

std::string ApplicationTools::search_description(const std::string& query) const {
  if (!index_) return "The description of this application is empty.";
  const auto q = index_->vectorize(query);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < paragraph_vectors_.size(); ++i) {
    const double s = features::dot(q, paragraph_vectors_[i]);
    if (s > 0) scored.emplace_back(s, i);
  }
  if (scored.empty()) return "No description paragraph matches \"" + query + "\".";
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  if (scored.size() > top_k_) scored.resize(top_k_);
  std::string out;
  for (const auto& [score, i] : scored) {
    if (!out.empty()) out += "\n\n";
    out += "[Paragraph " + std::to_string(i + 1) + "] " + application_.description_paragraphs[i];
  }
  return out;
}

std::string ApplicationTools::invoke(const std::string& name, const json& arguments) const {
  if (name == "get_claim") {
    const auto it = arguments.find("claim_number");
    if (it != arguments.end() && it->is_number_integer()) return get_claim(it->get<int>());
    if (it != arguments.end() && it->is_string()) {
      try {
        return get_claim(std::stoi(it->get<std::string>()));
      } catch (const std::logic_error&) {
      }
    }
    return "Invalid arguments for get_claim: expected {\"claim_number\": <integer>}.";
  }
  if (name == "search_description") {
    const auto it = arguments.find("query");
    if (it != arguments.end() && it->is_string()) return search_description(it->get<std::string>());
    return "Invalid arguments for search_description: expected {\"query\": <string>}.";
  }
  return "Unknown tool \"" + name + "\". Available tools: get_claim, search_description.";
}

std::vector<llm::ToolDefinition> ApplicationTools::definitions() {
  return {
      {"get_claim", "Returns the text of a claim of this patent application given its claim number.",
       {{"type", "object"},
        {"properties", {{"claim_number", {{"type", "integer"}, {"description", "Claim number"}}}}},
        {"required", {"claim_number"}}}},
      {"search_description",
       "Returns the description paragraphs most relevant to the query (TF-IDF search).",
       {{"type", "object"},
        {"properties", {{"query", {{"type", "string"}, {"description", "Key words or a phrase"}}}}},
        {"required", {"query"}}}},
  };
}

std::string render_agent_prompt(const corpus::Claim& claim, const LikelihoodLexicon& lexicon) {
  std::string categories;
  for (auto c : corpus::kFinalCategories) {
    if (!categories.empty()) categories += "\n";
    categories += "- `" + std::string(corpus::id(c)) + "` (" + std::string(corpus::display_name(c)) +
                  "): " + std::string(corpus::description(c));
  }
  std::string options;
  for (const auto& e : lexicon.entries()) options += "- " + e.phrase + "\n";
  const auto prompt = text::render_template(
      assets::require("prompts/agent_v1.txt"),
      {{"indefiniteness_categories", categories},
       {"claim", std::to_string(claim.number) + ". " + claim.text}});
  const auto output = text::render_template(assets::require("prompts/agent_output_v1.txt"),
                                            {{"likelihood_options", options}});
  return std::string(text::trim(prompt)) + "\n\n" + std::string(text::trim(output)) + "\n";
}

const json& agent_answer_schema() {
  static const json schema = json::parse(R"({
    "type": "object",
    "properties": {
      "likelihood": {"type": "string"},
      "reasons": {
        "type": "array",
        "items": {
          "type": "object",
          "properties": {
            "confidence": {"type": "string"},
            "reasonText": {"type": "string"},
            "reasonCategory": {"type": "string"},
            "claimRecitations": {"type": "array", "items": {"type": "string"}}
          },
          "required": ["confidence", "reasonText", "reasonCategory"]
        }
      }
    },
    "required": ["likelihood", "reasons"]
  })");
  return schema;
}

std::vector<std::string> validate_agent_answer(const json& answer) {
  return validate_json_schema(agent_answer_schema(), answer);
}

AgentPrediction run_agent(const corpus::Claim& claim, const corpus::PatentApplication& application,
                          llm::Gateway& gateway, const AgentConfig& config,
                          const LikelihoodLexicon& lexicon) {
  if (config.max_tool_calls < 0) throw Error(ErrorKind::kConfig, "max_tool_calls must be >= 0");
  AgentPrediction prediction;
  prediction.application_id = application.application_id;
  prediction.claim_number = claim.number;

  const ApplicationTools tools(application, config.search_top_k);
  llm::ChatRequest request;
  request.model = gateway.model_for(config.model_role);
  request.max_tokens = config.max_tokens;
  request.messages = {llm::ChatMessage::user(render_agent_prompt(claim, lexicon))};

  const int max_rounds = config.max_tool_calls + 1;
  int tool_calls = 0;
  int schema_failures = 0;
  while (prediction.gateway_rounds < max_rounds) {
    const bool last_round = prediction.gateway_rounds + 1 == max_rounds;
    const bool offer_tools = !last_round && tool_calls < config.max_tool_calls;
    request.tools = offer_tools ? ApplicationTools::definitions() : std::vector<llm::ToolDefinition>{};
    const auto reply = gateway.complete(request);
    ++prediction.gateway_rounds;

    if (reply.has_tool_calls()) {
      request.messages.push_back(reply.as_message());
      for (const auto& call : reply.tool_calls) {
        ToolCall record;
        record.tool_name = call.name;
        try {
          record.arguments = json::parse(call.arguments.empty() ? "{}" : call.arguments);
        } catch (const json::parse_error&) {
          record.arguments = call.arguments;
        }
        if (offer_tools && tool_calls < config.max_tool_calls) {
          record.response_text = record.arguments.is_object()
                                     ? tools.invoke(call.name, record.arguments)
                                     : "Invalid arguments: expected a JSON object.";
        } else {
          record.response_text = std::string(kBudgetNotice);
        }
        ++tool_calls;
        request.messages.push_back(llm::ChatMessage::tool(call.id, record.response_text));
        prediction.tool_trace.push_back(std::move(record));
      }
      continue;
    }

    std::vector<std::string> problems;
    json answer;
    try {
      answer = json::parse(llm::strip_code_fence(reply.content));
      problems = validate_agent_answer(answer);
    } catch (const json::parse_error& e) {
      problems = {std::string("not valid JSON: ") + e.what()};
    }
    if (problems.empty()) {
      prediction.likelihood = lexicon.resolve(answer.at("likelihood").get<std::string>(),
                                              &prediction.warnings);
      for (const auto& r : answer.at("reasons")) {
        PredictedReason pr;
        pr.confidence = lexicon.resolve(r.at("confidence").get<std::string>(), &prediction.warnings);
        auto& reason = pr.reason;
        reason.reason_text = r.at("reasonText").get<std::string>();
        reason.raw_category = r.at("reasonCategory").get<std::string>();
        reason.category = oa::normalize_category(reason.raw_category, &prediction.warnings);
        reason.claims = {claim.number};
        reason.recitations = r.value("claimRecitations", std::vector<std::string>{});
        for (const auto& recitation : reason.recitations) {
          if (auto span = oa::fuzzy_match_recitation(recitation, claim.text)) {
            span->claim_number = claim.number;
            reason.recitation_spans.push_back(*span);
          } else {
            reason.unmatched_recitations.push_back(recitation);
          }
        }
        prediction.reasons.push_back(std::move(pr));
      }
      return prediction;
    }

    std::string joined;
    for (const auto& p : problems) joined += (joined.empty() ? "" : "; ") + p;
    prediction.errors.push_back(joined);
    spdlog::warn("agent answer for {}/{} rejected: {}", application.application_id, claim.number,
                 joined);
    if (++schema_failures > config.max_schema_retries) break;
    request.messages.push_back(reply.as_message());
    request.messages.push_back(
        llm::ChatMessage::user(text::render_template(kCorrection, {{"errors", joined}})));
  }
  prediction.failed = true;
  if (prediction.errors.empty() || prediction.gateway_rounds >= max_rounds) {
    prediction.errors.push_back("no valid answer within " + std::to_string(max_rounds) +
                                " gateway rounds");
  }
  return prediction;
}

std::array<double, corpus::kNumFinalCategories> reason_confidences_to_multilabel(
    const AgentPrediction& prediction) {
  std::array<double, corpus::kNumFinalCategories> out{};
  for (const auto& r : prediction.reasons) {
    if (const auto idx = corpus::final_index(r.reason.category)) {
      out[*idx] = std::max(out[*idx], r.confidence.probability);
    }
  }
  return out;
}

}  // namespace defexam::classifiers

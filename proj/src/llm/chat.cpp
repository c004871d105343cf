// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/llm/chat.hpp"

#include <cmath>
#include <set>

#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"
#include "defexam/common/hashing.hpp"
#include "defexam/common/text.hpp"

namespace defexam::llm {

using nlohmann::json;

json ChatRequest::to_wire() const {
  json messages_json = json::array();
  for (const auto& m : messages) {
    json mj = {{"role", m.role}, {"content", m.content}};
    if (!m.tool_calls.empty()) {
      json calls = json::array();
      for (const auto& call : m.tool_calls) {
        calls.push_back({{"id", call.id},
                         {"type", "function"},
                         {"function", {{"name", call.name}, {"arguments", call.arguments}}}});
      }
      mj["tool_calls"] = std::move(calls);
    }
    if (!m.tool_call_id.empty()) mj["tool_call_id"] = m.tool_call_id;
    messages_json.push_back(std::move(mj));
  }
  json body = {{"model", model}, {"messages", std::move(messages_json)},
               {"temperature", temperature}};
  if (!tools.empty()) {
    json tools_json = json::array();
    for (const auto& t : tools) {
      tools_json.push_back({{"type", "function"},
                            {"function", {{"name", t.name},
                                          {"description", t.description},
                                          {"parameters", t.parameters}}}});
    }
    body["tools"] = std::move(tools_json);
  }
  if (top_logprobs > 0) {
    body["logprobs"] = true;
    body["top_logprobs"] = top_logprobs;
  }
  if (max_tokens) body["max_tokens"] = *max_tokens;
  return body;
}

std::string ChatRequest::cache_key() const { return sha256_hex(fs::dump_compact(to_wire())); }

AssistantMessage parse_completion(const std::string& body) {
  AssistantMessage out;
  try {
    const auto j = json::parse(body);
    const auto& choice = j.at("choices").at(0);
    const auto& message = choice.at("message");
    if (!message.is_object()) throw Error(ErrorKind::kProtocol, "completion message is not an object");
    if (auto it = message.find("content"); it != message.end() && it->is_string()) {
      out.content = it->get<std::string>();
    }
    if (auto it = message.find("tool_calls"); it != message.end() && it->is_array()) {
      for (const auto& call : *it) {
        ToolCallRequest req;
        req.id = call.value("id", std::string());
        const auto& fn = call.at("function");
        req.name = fn.at("name").get<std::string>();
        const auto& args = fn.at("arguments");
        req.arguments = args.is_string() ? args.get<std::string>() : args.dump();
        out.tool_calls.push_back(std::move(req));
      }
    }
    if (auto it = choice.find("finish_reason"); it != choice.end() && it->is_string()) {
      out.finish_reason = it->get<std::string>();
    }
    if (auto lp = choice.find("logprobs"); lp != choice.end() && lp->is_object()) {
      if (auto content = lp->find("content"); content != lp->end() && content->is_array()) {
        for (const auto& tok : *content) {
          TokenLogprobs entry;
          entry.token = tok.at("token").get<std::string>();
          entry.logprob = tok.at("logprob").get<double>();
          if (auto top = tok.find("top_logprobs"); top != tok.end() && top->is_array()) {
            for (const auto& alt : *top) {
              entry.top.push_back({alt.at("token").get<std::string>(),
                                   alt.at("logprob").get<double>()});
            }
          }
          out.logprobs.push_back(std::move(entry));
        }
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kProtocol,
                std::string("non-conforming chat completion response: ") + e.what());
  }
  return out;
}

double GradeDistribution::total() const {
  double sum = 0.0;
  for (double v : p) sum += v;
  return sum;
}

double GradeDistribution::weighted_mean() const {
  double num = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) num += static_cast<double>(i + 1) * p[i];
  return num / total();
}

namespace {

// Grade 1..5 for "3" or " 3"; 0 otherwise.
int grade_of_token(const std::string& token) {
  std::string_view t = token;
  if (t.size() == 2 && t[0] == ' ') t.remove_prefix(1);
  if (t.size() == 1 && t[0] >= '1' && t[0] <= '5') return t[0] - '0';
  return 0;
}

}  // namespace

GradeDistribution grade_distribution_from(const AssistantMessage& message) {
  for (const auto& position : message.logprobs) {
    std::vector<TopLogprob> candidates = position.top;
    if (candidates.empty()) candidates.push_back({position.token, position.logprob});
    GradeDistribution dist;
    bool found = false;
    std::set<std::string> seen;
    for (const auto& alt : candidates) {
      const int grade = grade_of_token(alt.token);
      if (grade == 0 || !seen.insert(alt.token).second) continue;
      dist.p[static_cast<std::size_t>(grade - 1)] += std::exp(alt.logprob);
      found = true;
    }
    if (found && dist.total() > 0.0) return dist;
  }
  throw Error(ErrorKind::kProtocol, "judge reply contains no grade token in its log-probabilities");
}

std::string strip_code_fence(const std::string& content) {
  auto trimmed = text::trim(content);
  if (trimmed.substr(0, 3) != "```") return std::string(trimmed);
  const auto first_newline = trimmed.find('\n');
  const auto closing = trimmed.rfind("```");
  if (first_newline == std::string_view::npos || closing <= first_newline) {
    return std::string(trimmed);
  }
  return std::string(text::trim(trimmed.substr(first_newline + 1, closing - first_newline - 1)));
}

}  // namespace defexam::llm

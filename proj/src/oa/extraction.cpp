// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/oa/extraction.hpp"

#include <regex>
#include <set>

#include <spdlog/spdlog.h>

#include "defexam/common/assets.hpp"
#include "defexam/common/error.hpp"
#include "defexam/common/json_schema.hpp"
#include "defexam/common/text.hpp"
#include "defexam/corpus/category.hpp"

namespace defexam::oa {

using nlohmann::json;

namespace {

json claim_ref_json(const ClaimRef& ref) {
  return std::visit([](const auto& v) { return json(v); }, ref);
}

ClaimRef claim_ref_from(const json& j) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_string()) return j.get<std::string>();
  throw Error(ErrorKind::kData, "claim reference must be an integer or string: " + j.dump());
}

std::vector<ClaimRef> claim_refs_from(const json& j) {
  std::vector<ClaimRef> out;
  for (const auto& e : j) out.push_back(claim_ref_from(e));
  return out;
}

constexpr std::string_view kCorrection =
    "Your reply could not be used: {errors}\n"
    "Reply again with only the JSON object, strictly following the schema.";

}  // namespace

void to_json(json& j, const RawReason& reason) {
  json claims = json::array();
  for (const auto& c : reason.claims) claims.push_back(claim_ref_json(c));
  j = {{"reasonText", reason.reason_text},
       {"claims", claims},
       {"reasonCategory", reason.reason_category},
       {"claimRecitations", reason.claim_recitations}};
  if (reason.reason_context) j["reasonContext"] = *reason.reason_context;
}

void from_json(const json& j, RawReason& reason) {
  reason.reason_text = j.at("reasonText").get<std::string>();
  reason.reason_context.reset();
  if (auto it = j.find("reasonContext"); it != j.end() && it->is_string()) {
    if (!text::trim(it->get<std::string>()).empty()) reason.reason_context = it->get<std::string>();
  }
  reason.claims = claim_refs_from(j.at("claims"));
  reason.reason_category = j.at("reasonCategory").get<std::string>();
  reason.claim_recitations = j.value("claimRecitations", std::vector<std::string>{});
}

void to_json(json& j, const RawRejectionRecord& record) {
  json claims = json::array();
  for (const auto& c : record.rejected_claims) claims.push_back(claim_ref_json(c));
  j = {{"rejectedClaims", claims}, {"rejectionReasons", record.rejection_reasons}};
}

void from_json(const json& j, RawRejectionRecord& record) {
  record.rejected_claims = claim_refs_from(j.at("rejectedClaims"));
  record.rejection_reasons = j.at("rejectionReasons").get<std::vector<RawReason>>();
}

const json& extraction_schema() {
  static const json schema = [] {
    json ids = json::array();
    for (auto c : corpus::kAllCategories) ids.push_back(std::string(corpus::id(c)));
    const auto rendered = text::render_template(
        assets::require("prompts/extraction_schema_v1.json"), {{"category_ids", ids.dump()}});
    return json::parse(rendered);
  }();
  return schema;
}

std::vector<std::string> validate_record(const json& reply) {
  return validate_json_schema(extraction_schema(), reply);
}

std::vector<corpus::Section> select_112_sections(const corpus::OfficeActionDocument& office_action) {
  std::vector<corpus::Section> out;
  for (const auto& s : office_action.sections) {
    if (s.heading.find("112") != std::string::npos) out.push_back(s);
  }
  return out;
}

std::string render_extraction_prompt() {
  std::string categories;
  for (auto c : corpus::kAllCategories) {
    categories += "        - `" + std::string(corpus::id(c)) + "`: " +
                  std::string(corpus::description(c)) + "\n";
  }
  if (!categories.empty()) categories.pop_back();
  return text::render_template(assets::require("prompts/extraction_v1.txt"),
                               {{"schema", extraction_schema().dump(2)},
                                {"rejection_categories", categories}});
}

std::string render_sections(const std::vector<corpus::Section>& sections) {
  std::string out;
  for (const auto& s : sections) {
    if (!out.empty()) out += "\n\n";
    if (!s.heading.empty()) out += "# " + s.heading + "\n\n";
    out += s.body;
  }
  return out;
}

ExtractionOutcome extract_rejections(const std::vector<corpus::Section>& sections,
                                     llm::Gateway& gateway, const ExtractionOptions& options) {
  ExtractionOutcome outcome;
  if (sections.empty()) return outcome;
  if (options.max_attempts < 1) {
    throw Error(ErrorKind::kConfig, "extraction max_attempts must be at least 1");
  }

  llm::ChatRequest request;
  request.model = gateway.model_for(options.model_role);
  request.max_tokens = options.max_tokens;
  request.messages = {llm::ChatMessage::system(render_extraction_prompt()),
                      llm::ChatMessage::user(render_sections(sections))};

  while (outcome.llm_calls < options.max_attempts) {
    const auto reply = gateway.complete(request);
    ++outcome.llm_calls;
    std::vector<std::string> problems;
    json parsed;
    try {
      parsed = json::parse(llm::strip_code_fence(reply.content));
      problems = validate_record(parsed);
    } catch (const json::parse_error& e) {
      problems = {std::string("not valid JSON: ") + e.what()};
    }
    if (problems.empty()) {
      try {
        outcome.record = parsed.get<RawRejectionRecord>();
        return outcome;
      } catch (const std::exception& e) {
        problems = {e.what()};
      }
    }
    std::string joined;
    for (const auto& p : problems) joined += (joined.empty() ? "" : "; ") + p;
    spdlog::warn("extraction reply rejected (call {}/{}): {}", outcome.llm_calls,
                 options.max_attempts, joined);
    outcome.errors.push_back(joined);
    request.messages.push_back(reply.as_message());
    request.messages.push_back(
        llm::ChatMessage::user(text::render_template(kCorrection, {{"errors", joined}})));
  }
  outcome.failed = true;
  return outcome;
}

ExpandedClaims expand_claim_ranges(const std::vector<ClaimRef>& entries) {
  static const std::regex kRange(R"(^\s*(\d+)\s*(?:(?:-|\xE2\x80\x93|\xE2\x80\x94)\s*(\d+)\s*)?$)");
  constexpr long kMaxSpan = 1000;
  std::set<int> claims;
  ExpandedClaims out;
  for (const auto& entry : entries) {
    if (const int* n = std::get_if<int>(&entry)) {
      if (*n > 0) {
        claims.insert(*n);
      } else {
        out.errors.push_back("claim number must be positive: " + std::to_string(*n));
      }
      continue;
    }
    const auto& s = std::get<std::string>(entry);
    std::smatch m;
    if (!std::regex_match(s, m, kRange) || m[1].length() > 9 || m[2].length() > 9) {
      out.errors.push_back("malformed claim range: \"" + s + "\"");
      continue;
    }
    const long lo = std::stol(m[1].str());
    const long hi = m[2].matched ? std::stol(m[2].str()) : lo;
    if (lo < 1 || hi < lo || hi - lo > kMaxSpan) {
      out.errors.push_back("invalid claim range: \"" + s + "\"");
      continue;
    }
    for (long c = lo; c <= hi; ++c) claims.insert(static_cast<int>(c));
  }
  out.claims.assign(claims.begin(), claims.end());
  return out;
}

}  // namespace defexam::oa

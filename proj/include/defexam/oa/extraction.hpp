// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "defexam/corpus/types.hpp"
#include "defexam/llm/gateway.hpp"

namespace defexam::oa {

/// A claim reference as written by the extraction model: a claim number or an
/// inclusive range string such as "3-5".
using ClaimRef = std::variant<int, std::string>;

struct RawReason {
  std::string reason_text;
  std::optional<std::string> reason_context;
  std::vector<ClaimRef> claims;
  std::string reason_category;
  std::vector<std::string> claim_recitations;

  bool operator==(const RawReason&) const = default;
};

/// Extraction output. Serialized with the wire names of the extraction
/// schema (rejectedClaims, rejectionReasons, reasonText, ...).
struct RawRejectionRecord {
  std::vector<ClaimRef> rejected_claims;
  std::vector<RawReason> rejection_reasons;

  bool operator==(const RawRejectionRecord&) const = default;
};

void to_json(nlohmann::json& j, const RawReason& reason);
void from_json(const nlohmann::json& j, RawReason& reason);
void to_json(nlohmann::json& j, const RawRejectionRecord& record);
void from_json(const nlohmann::json& j, RawRejectionRecord& record);

/// The extraction schema with the category enum filled in.
const nlohmann::json& extraction_schema();

/// Schema violations of a parsed reply; empty when valid.
std::vector<std::string> validate_record(const nlohmann::json& reply);

/// Sections whose heading contains "112", in document order.
std::vector<corpus::Section> select_112_sections(const corpus::OfficeActionDocument& office_action);

/// System prompt for extraction: the template with schema and category list.
std::string render_extraction_prompt();

/// User message carrying the selected sections.
std::string render_sections(const std::vector<corpus::Section>& sections);

struct ExtractionOptions {
  std::string model_role = "extractor";
  int max_attempts = 3;  // total LLM calls per document
  std::optional<int> max_tokens{};
};

struct ExtractionOutcome {
  RawRejectionRecord record;
  bool failed = false;  // persistent schema-invalid output
  int llm_calls = 0;
  std::vector<std::string> errors;  // one entry per rejected reply
};

/// Runs the extraction prompt over `sections`. Replies that are not JSON or
/// violate the schema are answered with a correction message and retried, up
/// to `max_attempts` calls in total. No call is made for an empty list.
ExtractionOutcome extract_rejections(const std::vector<corpus::Section>& sections,
                                     llm::Gateway& gateway,
                                     const ExtractionOptions& options = {});

struct ExpandedClaims {
  std::vector<int> claims;          // ascending, unique
  std::vector<std::string> errors;  // one per malformed entry
};

ExpandedClaims expand_claim_ranges(const std::vector<ClaimRef>& entries);

}  // namespace defexam::oa

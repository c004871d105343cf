// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "defexam/corpus/types.hpp"

// JSON record layout of the corpus. One LabeledClaim per line:
//   {"application_id", "claim_number", "claim_text", "parent_numbers",
//    "label", "reasons": [...], "split", "filing_date"}
namespace defexam::corpus {

void to_json(nlohmann::json& j, const RecitationSpan& span);
void from_json(const nlohmann::json& j, RecitationSpan& span);

void to_json(nlohmann::json& j, const RejectionReason& reason);
void from_json(const nlohmann::json& j, RejectionReason& reason);

void to_json(nlohmann::json& j, const LabeledClaim& row);
void from_json(const nlohmann::json& j, LabeledClaim& row);

void to_json(nlohmann::json& j, const Claim& claim);
void from_json(const nlohmann::json& j, Claim& claim);

void to_json(nlohmann::json& j, const PatentApplication& app);
void from_json(const nlohmann::json& j, PatentApplication& app);

void to_json(nlohmann::json& j, const Section& section);
void from_json(const nlohmann::json& j, Section& section);

void to_json(nlohmann::json& j, const OfficeActionDocument& doc);
void from_json(const nlohmann::json& j, OfficeActionDocument& doc);

}  // namespace defexam::corpus

namespace defexam {
void to_json(nlohmann::json& j, const Date& date);
void from_json(const nlohmann::json& j, Date& date);
}  // namespace defexam

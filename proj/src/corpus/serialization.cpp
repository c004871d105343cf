// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/corpus/serialization.hpp"

#include "defexam/common/error.hpp"

namespace defexam {

void to_json(nlohmann::json& j, const Date& date) { j = date.iso(); }

void from_json(const nlohmann::json& j, Date& date) {
  auto parsed = Date::parse(j.get<std::string>());
  if (!parsed) throw Error(ErrorKind::kData, "invalid date: " + j.dump());
  date = *parsed;
}

}  // namespace defexam

namespace defexam::corpus {

void to_json(nlohmann::json& j, const RecitationSpan& span) {
  j = {{"claim_number", span.claim_number},
       {"start", span.start},
       {"end", span.end},
       {"match_score", span.match_score}};
}

void from_json(const nlohmann::json& j, RecitationSpan& span) {
  span.claim_number = j.at("claim_number").get<int>();
  span.start = j.at("start").get<std::size_t>();
  span.end = j.at("end").get<std::size_t>();
  span.match_score = j.at("match_score").get<double>();
}

void to_json(nlohmann::json& j, const RejectionReason& reason) {
  j = {{"reason_text", reason.reason_text},
       {"reason_context", reason.reason_context ? nlohmann::json(*reason.reason_context)
                                                : nlohmann::json(nullptr)},
       {"claims", reason.claims},
       {"category", id(reason.category)},
       {"raw_category", reason.raw_category},
       {"recitations", reason.recitations},
       {"recitation_spans", reason.recitation_spans},
       {"unmatched_recitations", reason.unmatched_recitations}};
}

void from_json(const nlohmann::json& j, RejectionReason& reason) {
  reason.reason_text = j.at("reason_text").get<std::string>();
  reason.reason_context.reset();
  if (auto it = j.find("reason_context"); it != j.end() && !it->is_null()) {
    reason.reason_context = it->get<std::string>();
  }
  reason.claims = j.at("claims").get<std::vector<int>>();
  const auto category = j.at("category").get<std::string>();
  auto parsed = from_id(category);
  if (!parsed) throw Error(ErrorKind::kData, "unknown category: " + category);
  reason.category = *parsed;
  reason.raw_category = j.value("raw_category", category);
  reason.recitations = j.value("recitations", std::vector<std::string>{});
  reason.recitation_spans = j.value("recitation_spans", std::vector<RecitationSpan>{});
  reason.unmatched_recitations = j.value("unmatched_recitations", std::vector<std::string>{});
}

void to_json(nlohmann::json& j, const LabeledClaim& row) {
  j = {{"application_id", row.claim.application_id},
       {"claim_number", row.claim.number},
       {"claim_text", row.claim.text},
       {"parent_numbers", row.claim.parent_numbers},
       {"label", row.label},
       {"reasons", row.reasons},
       {"split", to_string(row.split)},
       {"filing_date", row.filing_date ? nlohmann::json(*row.filing_date)
                                       : nlohmann::json(nullptr)}};
}

void from_json(const nlohmann::json& j, LabeledClaim& row) {
  row.claim.application_id = j.at("application_id").get<std::string>();
  row.claim.number = j.at("claim_number").get<int>();
  row.claim.text = j.at("claim_text").get<std::string>();
  row.claim.parent_numbers = j.at("parent_numbers").get<std::vector<int>>();
  row.label = j.at("label").get<bool>();
  row.reasons = j.at("reasons").get<std::vector<RejectionReason>>();
  const auto split = j.at("split").get<std::string>();
  auto parsed = split_from_string(split);
  if (!parsed) throw Error(ErrorKind::kData, "unknown split: " + split);
  row.split = *parsed;
  row.filing_date.reset();
  if (auto it = j.find("filing_date"); it != j.end() && !it->is_null()) {
    row.filing_date = it->get<Date>();
  }
}

void to_json(nlohmann::json& j, const Claim& claim) {
  j = {{"number", claim.number},
       {"text", claim.text},
       {"parent_numbers", claim.parent_numbers},
       {"application_id", claim.application_id}};
}

void from_json(const nlohmann::json& j, Claim& claim) {
  claim.number = j.at("number").get<int>();
  claim.text = j.at("text").get<std::string>();
  claim.parent_numbers = j.at("parent_numbers").get<std::vector<int>>();
  claim.application_id = j.value("application_id", std::string());
}

void to_json(nlohmann::json& j, const PatentApplication& app) {
  j = {{"application_id", app.application_id},
       {"filing_date", app.filing_date},
       {"cpc_codes", app.cpc_codes},
       {"claims", app.claims},
       {"description_paragraphs", app.description_paragraphs},
       {"office_action_refs", app.office_action_refs}};
}

void from_json(const nlohmann::json& j, PatentApplication& app) {
  app.application_id = j.at("application_id").get<std::string>();
  app.filing_date = j.at("filing_date").get<Date>();
  app.cpc_codes = j.value("cpc_codes", std::vector<std::string>{});
  app.claims = j.at("claims").get<std::vector<Claim>>();
  for (auto& claim : app.claims) claim.application_id = app.application_id;
  app.description_paragraphs = j.at("description_paragraphs").get<std::vector<std::string>>();
  app.office_action_refs = j.value("office_action_refs", std::vector<std::string>{});
}

void to_json(nlohmann::json& j, const Section& section) {
  j = {{"heading", section.heading}, {"body", section.body}};
}

void from_json(const nlohmann::json& j, Section& section) {
  section.heading = j.at("heading").get<std::string>();
  section.body = j.at("body").get<std::string>();
}

void to_json(nlohmann::json& j, const OfficeActionDocument& doc) {
  j = {{"application_id", doc.application_id},
       {"mail_date", doc.mail_date},
       {"sections", doc.sections},
       {"raw_source_ref", doc.raw_source_ref},
       {"full_text", doc.full_text}};
}

void from_json(const nlohmann::json& j, OfficeActionDocument& doc) {
  doc.application_id = j.at("application_id").get<std::string>();
  doc.mail_date = j.at("mail_date").get<Date>();
  doc.sections = j.at("sections").get<std::vector<Section>>();
  doc.raw_source_ref = j.value("raw_source_ref", std::string());
  doc.full_text = j.value("full_text", std::string());
}

}  // namespace defexam::corpus

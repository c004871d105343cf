// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/oa/labels.hpp"

#include <map>

#include <spdlog/spdlog.h>

#include "defexam/common/text.hpp"

namespace defexam::oa {

corpus::Category normalize_category(std::string_view raw_category,
                                    std::vector<std::string>* warnings) {
  auto key = text::to_lower_ascii(text::trim(raw_category));
  for (auto& ch : key) {
    if (ch == ' ' || ch == '-') ch = '_';
  }
  if (auto c = corpus::from_id(key)) return *c;
  const auto message = "unknown reason category \"" + std::string(raw_category) + "\" mapped to other";
  spdlog::warn("{}", message);
  if (warnings) warnings->push_back(message);
  return corpus::Category::kOther;
}

FinalizedLabels finalize_labels(const RawRejectionRecord& record,
                                const corpus::PatentApplication& application,
                                const MatchOptions& match) {
  FinalizedLabels out;
  auto warn = [&](std::string message) {
    spdlog::warn("{}: {}", application.application_id, message);
    out.warnings.push_back(application.application_id + ": " + message);
  };

  std::map<int, corpus::LabeledClaim> rows;
  for (const auto& raw : record.rejection_reasons) {
    const auto category = normalize_category(raw.reason_category, &out.warnings);
    if (corpus::is_parse_only(category)) continue;

    auto expanded = expand_claim_ranges(raw.claims);
    for (const auto& e : expanded.errors) warn(e);
    std::vector<const corpus::Claim*> targets;
    std::vector<int> resolved;
    for (int number : expanded.claims) {
      if (const auto* claim = application.find_claim(number)) {
        targets.push_back(claim);
        resolved.push_back(number);
      } else {
        warn("reason references nonexistent claim " + std::to_string(number));
      }
    }
    if (targets.empty()) continue;

    corpus::RejectionReason base;
    base.reason_text = raw.reason_text;
    base.reason_context = raw.reason_context;
    base.claims = resolved;
    base.category = category;
    base.raw_category = raw.reason_category;
    base.recitations = raw.claim_recitations;

    for (const auto* claim : targets) {
      auto reason = base;
      for (const auto& recitation : raw.claim_recitations) {
        if (auto span = fuzzy_match_recitation(recitation, claim->text, match)) {
          span->claim_number = claim->number;
          reason.recitation_spans.push_back(*span);
        } else {
          reason.unmatched_recitations.push_back(recitation);
        }
      }
      auto [it, inserted] = rows.try_emplace(claim->number);
      if (inserted) {
        it->second.claim = *claim;
        it->second.label = true;
        it->second.filing_date = application.filing_date;
      }
      it->second.reasons.push_back(std::move(reason));
    }
  }
  for (auto& [number, row] : rows) out.claims.push_back(std::move(row));
  return out;
}

}  // namespace defexam::oa

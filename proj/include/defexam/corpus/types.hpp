// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "defexam/common/date.hpp"
#include "defexam/corpus/category.hpp"

namespace defexam::corpus {

struct Claim {
  int number = 0;
  std::string text;
  std::vector<int> parent_numbers;  // empty: independent claim
  std::string application_id;

  bool operator==(const Claim&) const = default;
};

/// Character span in a claim's text. Offsets count Unicode scalar values.
struct RecitationSpan {
  int claim_number = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  double match_score = 0.0;

  bool operator==(const RecitationSpan&) const = default;
};

struct RejectionReason {
  std::string reason_text;
  std::optional<std::string> reason_context;
  std::vector<int> claims;
  Category category = Category::kOther;
  std::string raw_category;  // as emitted by the extraction model, for audit
  std::vector<std::string> recitations;
  std::vector<RecitationSpan> recitation_spans;
  std::vector<std::string> unmatched_recitations;

  bool operator==(const RejectionReason&) const = default;

  /// Text shown to the judge: reason text, followed by the context when the
  /// reason refers to another one.
  std::string judge_text() const;
};

enum class Split { kTrain, kTest, kValidation };

inline constexpr std::array<Split, 3> kAllSplits = {Split::kTrain, Split::kTest,
                                                    Split::kValidation};

std::string_view to_string(Split s);
std::optional<Split> split_from_string(std::string_view s);

struct LabeledClaim {
  Claim claim;
  bool label = false;  // true: indefinite
  std::vector<RejectionReason> reasons;
  Split split = Split::kTrain;
  std::optional<Date> filing_date;

  const std::string& application_id() const { return claim.application_id; }

  bool operator==(const LabeledClaim&) const = default;
};

struct Section {
  std::string heading;
  std::string body;

  bool operator==(const Section&) const = default;
};

struct OfficeActionDocument {
  std::string application_id;
  Date mail_date;
  std::vector<Section> sections;
  std::string raw_source_ref;  // cache key of the raw XML
  std::string full_text;       // normalized Markdown of the whole document

  bool operator==(const OfficeActionDocument&) const = default;
};

struct PatentApplication {
  std::string application_id;
  Date filing_date;
  std::vector<std::string> cpc_codes;
  std::vector<Claim> claims;
  std::vector<std::string> description_paragraphs;
  std::vector<std::string> office_action_refs;

  const Claim* find_claim(int number) const;

  bool operator==(const PatentApplication&) const = default;
};

/// Throws a data error when the invariants of the row do not hold: unlabeled
/// rows carry no reasons, labeled rows carry at least one, and every reason
/// lists this claim.
void validate(const LabeledClaim& row);

}  // namespace defexam::corpus

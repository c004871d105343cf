// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/corpus/types.hpp"

#include <algorithm>

#include "defexam/common/error.hpp"

namespace defexam::corpus {

std::string RejectionReason::judge_text() const {
  if (!reason_context || reason_context->empty()) return reason_text;
  return reason_text + "\n\n" + *reason_context;
}

std::string_view to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kTest: return "test";
    case Split::kValidation: return "validation";
  }
  return "train";
}

std::optional<Split> split_from_string(std::string_view s) {
  for (auto split : kAllSplits) {
    if (to_string(split) == s) return split;
  }
  return std::nullopt;
}

const Claim* PatentApplication::find_claim(int number) const {
  auto it = std::find_if(claims.begin(), claims.end(),
                         [number](const Claim& c) { return c.number == number; });
  return it == claims.end() ? nullptr : &*it;
}

void validate(const LabeledClaim& row) {
  const auto where = row.claim.application_id + " claim " + std::to_string(row.claim.number);
  if (row.claim.number < 1) throw Error(ErrorKind::kData, where + ": claim number must be >= 1");
  if (!row.label && !row.reasons.empty()) {
    throw Error(ErrorKind::kData, where + ": definite claim carries rejection reasons");
  }
  if (row.label && row.reasons.empty()) {
    throw Error(ErrorKind::kData, where + ": indefinite claim without rejection reasons");
  }
  for (const auto& reason : row.reasons) {
    if (reason.reason_text.empty()) throw Error(ErrorKind::kData, where + ": empty reason text");
    if (std::find(reason.claims.begin(), reason.claims.end(), row.claim.number) ==
        reason.claims.end()) {
      throw Error(ErrorKind::kData, where + ": reason does not reference the claim");
    }
    if (is_parse_only(reason.category)) {
      throw Error(ErrorKind::kData, where + ": parse-only category in dataset row");
    }
  }
}

}  // namespace defexam::corpus
